"""
Shared pieces of the gridroute management commands.

Service exceptions become CommandError; compile commands share --out and
--save handling.
"""

import json
from typing import Any

from django.core.management.base import BaseCommand, CommandError

from gridroute.models import CompiledCircuit
from gridroute.services.analyze import AnalysisError
from gridroute.services.circuit_ir import AdaptiveCircuit, CircuitError, cost_report
from gridroute.services.documents import DocumentError, dump, serialize
from gridroute.services.grid_geom import GeometryError
from gridroute.services.pauli_frame import PauliError
from gridroute.services.render import RenderError
from gridroute.services.ring_compactor import CompactionError
from gridroute.services.sim_engine import SimulationError
from gridroute.services.teleport_route import RoutingError
from gridroute.services.verification import VerificationError

SERVICE_ERRORS = (
    AnalysisError,
    CircuitError,
    CompactionError,
    DocumentError,
    GeometryError,
    PauliError,
    RenderError,
    RoutingError,
    SimulationError,
    VerificationError,
)


class GridrouteCommand(BaseCommand):
    """Runs `run` and reports service failures as CommandError."""

    def handle(self, *args, **options):
        try:
            return self.run(**options)
        except SERVICE_ERRORS as e:
            raise CommandError(str(e)) from e

    def run(self, **options):
        raise NotImplementedError

    def write_json(self, data: Any) -> None:
        self.stdout.write(json.dumps(data, indent=2))


class CompileCommand(GridrouteCommand):
    """A generator command: builds a circuit, writes it and optionally stores it."""

    def add_arguments(self, parser):
        self.add_compile_arguments(parser)
        parser.add_argument(
            "--out",
            type=str,
            default=None,
            help="Write the circuit document here (relative to GRIDROUTE_OUTPUT_DIR); default: stdout",
        )
        parser.add_argument(
            "--save",
            nargs="?",
            const="",
            default=None,
            metavar="NAME",
            help="Also store the circuit in the database, optionally under NAME",
        )

    def add_compile_arguments(self, parser):
        pass

    def compile(self, **options) -> AdaptiveCircuit:
        raise NotImplementedError

    def run(self, **options):
        circuit = self.compile(**options)
        report = cost_report(circuit)

        if options.get("out"):
            path = dump(circuit, options["out"])
            self.stdout.write(self.style.SUCCESS(f"Wrote {path}"))
            self.stdout.write(
                f"depth {report.depth} (logical {report.logical_depth}), size {report.size}, width {report.width}"
            )
        else:
            self.stdout.write(serialize(circuit).decode("utf-8"))

        if options.get("save") is not None:
            stored = CompiledCircuit.from_circuit(circuit, options["save"])
            self.stderr.write(self.style.SUCCESS(f"Saved as #{stored.pk}: {stored}"))
