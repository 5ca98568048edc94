from .circuit_ir import AdaptiveCircuit, CircuitError, cost_report, validate
from .documents import DocumentError, dump, load, parse, serialize
from .render import RenderError, RenderSpec, render
from .ring_compactor import CompactionError, control_circuit, fanout_circuit
from .teleport_route import InteractionSpec, ReorderSpec, RoutingError, interact, reorder, simulate_ccac
from .verification import VerificationError, VerificationReport, verify

__all__ = [
    "AdaptiveCircuit",
    "CircuitError",
    "CompactionError",
    "DocumentError",
    "InteractionSpec",
    "RenderError",
    "RenderSpec",
    "ReorderSpec",
    "RoutingError",
    "VerificationError",
    "VerificationReport",
    "control_circuit",
    "cost_report",
    "dump",
    "fanout_circuit",
    "interact",
    "load",
    "parse",
    "render",
    "reorder",
    "serialize",
    "simulate_ccac",
    "validate",
    "verify",
]
