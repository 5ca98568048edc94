"""
Draw a 2D grid circuit as SVG.

Usage:
    python manage.py render reorder.json --out reorder.svg
    python manage.py render control.json --start 0 --stop 4 --panel-size 1
"""

from django.core.management.base import CommandError

from gridroute.services.documents import load, output_path
from gridroute.services.render import RenderSpec, render

from ._base import GridrouteCommand


class Command(GridrouteCommand):
    help = "Render a 2D grid circuit: roles, teleportation chains and SWAPs"

    def add_arguments(self, parser):
        parser.add_argument("circuit", type=str, help="Circuit document")
        parser.add_argument("--start", type=int, default=0, help="First timestep (default: 0)")
        parser.add_argument("--stop", type=int, default=None, help="Timestep after the last one drawn")
        parser.add_argument("--panel-size", type=int, default=None, help="Timesteps per panel (default: all)")
        parser.add_argument("--out", type=str, default=None, help="Write the SVG here; default: stdout")

    def run(self, **options):
        spec = RenderSpec(start=options["start"], stop=options["stop"], panel_size=options["panel_size"])
        svg = render(load(options["circuit"]), spec)
        if not options["out"]:
            self.stdout.write(svg.decode("utf-8"))
            return
        path = output_path(options["out"])
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_bytes(svg)
        except OSError as e:
            raise CommandError(f"cannot write {path}: {e.strerror}") from e
        self.stdout.write(self.style.SUCCESS(f"Wrote {path}"))
