"""
Scaling table of the control and fanout circuits.

Usage:
    python manage.py scaling --dim 2 --m-max 17
    python manage.py scaling --dim 3 --m-max 9 --format csv --out scaling.csv
"""

import csv
import io
import json
from dataclasses import asdict, fields

from django.core.management.base import CommandError

from gridroute.services.analyze import ScalingRow, scaling_report
from gridroute.services.documents import output_path

from ._base import GridrouteCommand


class Command(GridrouteCommand):
    help = "Depth, size and the distance bound of the generated circuits for m = 3, 5, ..., m-max"

    def add_arguments(self, parser):
        parser.add_argument("--dim", type=int, default=2, help="Grid dimension (default: 2)")
        parser.add_argument("--m-min", type=int, default=3, help="Smallest grid side (default: 3)")
        parser.add_argument("--m-max", type=int, required=True, help="Largest grid side")
        parser.add_argument("--format", choices=("json", "csv"), default="json")
        parser.add_argument("--out", type=str, default=None, help="Write the table here; default: stdout")

    def run(self, **options):
        m_min = options["m_min"] if options["m_min"] % 2 else options["m_min"] + 1
        m_values = list(range(max(m_min, 3), options["m_max"] + 1, 2))
        if not m_values:
            raise CommandError(f"no odd m in {options['m_min']}..{options['m_max']}")
        report = scaling_report(m_values, options["dim"])

        if options["format"] == "csv":
            buffer = io.StringIO()
            writer = csv.DictWriter(buffer, fieldnames=[f.name for f in fields(ScalingRow)])
            writer.writeheader()
            for row in report.rows:
                writer.writerow(asdict(row))
            text = buffer.getvalue()
        else:
            text = json.dumps(
                {"dim": report.dim, "rows": [asdict(r) for r in report.rows], "summary": report.summary()},
                indent=2,
            )

        if options["out"]:
            path = output_path(options["out"])
            try:
                path.parent.mkdir(parents=True, exist_ok=True)
                path.write_text(text)
            except OSError as e:
                raise CommandError(f"cannot write {path}: {e.strerror}") from e
            self.stdout.write(self.style.SUCCESS(f"Wrote {len(report.rows)} rows to {path}"))
        else:
            self.stdout.write(text)
