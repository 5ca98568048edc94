"""
Print the cost metrics of a circuit document.

Usage:
    python manage.py stats circuit.json
    python manage.py stats circuit.json --format json
"""

from dataclasses import asdict

from gridroute.services.circuit_ir import cost_report, validate
from gridroute.services.documents import load

from ._base import GridrouteCommand


class Command(GridrouteCommand):
    help = "Depth, size and width of a circuit after logical-to-physical expansion"

    def add_arguments(self, parser):
        parser.add_argument("circuit", type=str, help="Circuit document")
        parser.add_argument("--format", choices=("text", "json"), default="text")

    def run(self, **options):
        circuit = load(options["circuit"])
        report = cost_report(circuit)
        violations = [str(v) for v in validate(circuit)]
        data = {
            **asdict(report),
            "kind": circuit.meta.get("kind"),
            "dim": circuit.dim,
            "inputs": circuit.n_inputs,
            "measurements": circuit.measurement_count,
            "violations": violations,
        }
        if options["format"] == "json":
            self.write_json(data)
            return

        self.stdout.write(self.style.SUCCESS(f"{circuit.model} circuit ({data['kind'] or 'unknown kind'}), dim {circuit.dim}"))
        self.stdout.write(f"Depth: {report.depth} (logical {report.logical_depth})")
        self.stdout.write(f"Size: {report.size}")
        self.stdout.write(f"Width: {report.width}")
        self.stdout.write(f"Inputs: {circuit.n_inputs}, measurements: {circuit.measurement_count}")
        if violations:
            self.stdout.write(self.style.WARNING(f"{len(violations)} violations:"))
            for v in violations:
                self.stdout.write(f"  {v}")
