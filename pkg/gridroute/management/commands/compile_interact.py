"""
Compile one interaction round onto the n x n grid.

Usage:
    python manage.py compile_interact round.json --out interact.json

round.json: {"n": 4, "items": [{"gate": "H", "qubits": [3]}, {"gate": "CNOT", "qubits": [0, 2]}]}
"""

from gridroute.services.documents import load_interaction_spec
from gridroute.services.teleport_route import interact

from ._base import CompileCommand


class Command(CompileCommand):
    help = "Apply an interaction round of 1- and 2-qubit operations on the n x n grid"

    def add_compile_arguments(self, parser):
        parser.add_argument("spec", type=str, help="Interaction spec JSON file")

    def compile(self, **options):
        return interact(load_interaction_spec(options["spec"]))
