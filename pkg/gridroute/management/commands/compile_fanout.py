"""
Generate the fanout circuit on the m^dim grid.

Usage:
    python manage.py compile_fanout --m 7 --out fanout.json
"""

from gridroute.services.ring_compactor import fanout_circuit

from ._base import CompileCommand


class Command(CompileCommand):
    help = "Generate the non-adaptive fanout circuit on the m^dim grid"

    def add_compile_arguments(self, parser):
        parser.add_argument("--m", type=int, required=True, help="Grid side (odd, at least 3)")
        parser.add_argument("--dim", type=int, default=2, help="Grid dimension (default: 2)")

    def compile(self, **options):
        return fanout_circuit(options["m"], options["dim"])
