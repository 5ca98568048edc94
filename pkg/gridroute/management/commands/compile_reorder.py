"""
Compile a reorder spec into a constant-depth teleportation circuit.

Usage:
    python manage.py compile_reorder spec.json --out reorder.json

spec.json: {"n": 8, "moves": [{"row": 6, "column": 7}, {"row": 7, "column": 6}]}
"""

from gridroute.services.documents import load_reorder_spec
from gridroute.services.teleport_route import reorder

from ._base import CompileCommand


class Command(CompileCommand):
    help = "Teleport data qubits from column 0 into row 0 on the n x n grid"

    def add_compile_arguments(self, parser):
        parser.add_argument("spec", type=str, help="Reorder spec JSON file")

    def compile(self, **options):
        return reorder(load_reorder_spec(options["spec"]))
