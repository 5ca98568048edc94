# Django management commands
"""
Generate the controlled-U circuit on the m^dim grid.

Usage:
    python manage.py compile_control --m 5
    python manage.py compile_control --m 5 --dim 3 --gate H --out control.json
    python manage.py compile_control --m 3 --gate '[[0,0],[1,0],[1,0],[0,0]]' --save
"""

from gridroute.services.documents import parse_gate
from gridroute.services.ring_compactor import control_circuit

from ._base import CompileCommand


class Command(CompileCommand):
    help = "Generate the non-adaptive controlled-U circuit on the m^dim grid"

    def add_compile_arguments(self, parser):
        parser.add_argument("--m", type=int, required=True, help="Grid side (odd, at least 3)")
        parser.add_argument("--dim", type=int, default=2, help="Grid dimension (default: 2)")
        parser.add_argument(
            "--gate",
            type=str,
            default="X",
            help="Single-qubit gate name or a JSON 2x2 matrix as four [re, im] pairs (default: X)",
        )

    def compile(self, **options):
        return control_circuit(options["m"], options["dim"], parse_gate(options["gate"]))
