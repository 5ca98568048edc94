"""
Compile a CCAC circuit onto the n x n CCNTC grid.

Usage:
    python manage.py compile_ccac source.json --out grid.json
"""

from gridroute.services.documents import load
from gridroute.services.teleport_route import simulate_ccac

from ._base import CompileCommand


class Command(CompileCommand):
    help = "Compile a CCAC circuit of width n onto the n x n grid"

    def add_compile_arguments(self, parser):
        parser.add_argument("circuit", type=str, help="CCAC circuit document")

    def compile(self, **options):
        return simulate_ccac(load(options["circuit"]))
