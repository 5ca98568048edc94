# Django management commands
"""
Check a generated circuit against the contract of its generator.

Usage:
    python manage.py verify control.json --sim boolean
    python manage.py verify reorder.json --sim stabilizer --shots 50 --seed 7
    python manage.py verify interact.json --sim dense --format json

Exits with status 1 when the check fails.
"""

from django.core.management.base import CommandError

from gridroute.services.documents import load
from gridroute.services.verification import DEFAULT_SHOTS, SIMULATORS, verify

from ._base import GridrouteCommand


class Command(GridrouteCommand):
    help = "Verify a circuit document by simulation"

    def add_arguments(self, parser):
        parser.add_argument("circuit", type=str, help="Circuit document")
        parser.add_argument(
            "--sim",
            choices=SIMULATORS,
            default=None,
            help="Simulator (default: the one suited to the circuit kind)",
        )
        parser.add_argument(
            "--shots",
            type=int,
            default=DEFAULT_SHOTS,
            help=f"Random samples when an exhaustive check is too large (default: {DEFAULT_SHOTS})",
        )
        parser.add_argument("--seed", type=int, default=None, help="Seed (default: GRIDROUTE_DEFAULT_SEED)")
        parser.add_argument("--format", choices=("text", "json"), default="text")

    def run(self, **options):
        if options["shots"] < 1:
            raise CommandError("--shots must be positive")
        report = verify(load(options["circuit"]), options["sim"], shots=options["shots"], seed=options["seed"])

        if options["format"] == "json":
            self.write_json(report.to_dict())
        elif report.passed:
            self.stdout.write(self.style.SUCCESS(report.to_text()))
        else:
            self.stdout.write(self.style.ERROR(report.to_text()))

        if not report.passed:
            raise CommandError(
                f"verification failed: {report.failure_count} failures, {len(report.violations)} violations",
                returncode=1,
            )
