"""
Grid diagrams

SVG drawings of 2D grid circuits: one panel per block of timesteps, qubits
shaded by role, teleportation chains as dashed arrows and SWAPs as double
arrows. The markup lives in the gridroute/grid.svg template.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from django.template.loader import render_to_string

from .circuit_ir import MEASURE, PAULI, SWAP, AdaptiveCircuit, BasicOp, Timestep, is_grid_address
from .grid_geom import GridPoint, distance

logger = logging.getLogger(__name__)

DATA, INTERMEDIATE, UNUSED = "data", "intermediate", "unused"
ROLES = (DATA, INTERMEDIATE, UNUSED)

CELL = 28
MARGIN = 24
TITLE_HEIGHT = 18


class RenderError(Exception):
    """Raised for circuits or ranges that cannot be drawn."""

    pass


@dataclass(frozen=True)
class RenderSpec:
    """
    Timesteps [start, stop) drawn in panels of `panel_size` timesteps each.

    `panel_size` None puts the whole range in one panel.
    """

    start: int = 0
    stop: Optional[int] = None
    panel_size: Optional[int] = None

    def window(self, depth: int) -> Tuple[int, int]:
        stop = depth if self.stop is None else self.stop
        if not 0 <= self.start <= stop <= depth:
            raise RenderError(f"timestep range [{self.start}, {stop}) is outside 0..{depth}")
        return self.start, stop

    def panels(self, depth: int) -> List[Tuple[int, int]]:
        start, stop = self.window(depth)
        if self.panel_size is not None and self.panel_size < 1:
            raise RenderError("panel size must be positive")
        size = self.panel_size or max(stop - start, 1)
        return [(t, min(t + size, stop)) for t in range(start, max(stop, start + 1), size)]


@dataclass(frozen=True)
class Arrow:
    source: GridPoint
    target: GridPoint


def _grid_extent(circuit: AdaptiveCircuit) -> Tuple[int, int]:
    if circuit.shape:
        return circuit.shape[0], circuit.shape[1]
    points = circuit.qubits() | set(circuit.inputs)
    if not points:
        return 0, 0
    return max(p[0] for p in points) + 1, max(p[1] for p in points) + 1


def _is_reset(o: BasicOp, measured_on: Dict[int, GridPoint]) -> bool:
    ids = o.condition.ids
    return len(ids) == 1 and not o.condition.z_parity_of and measured_on.get(next(iter(ids))) == o.qubits[0]


def chain_arrows(timesteps: Sequence[Timestep], measured_on: Dict[int, GridPoint]) -> List[Arrow]:
    """
    One arrow per teleportation chain.

    A chain ends in a conditioned Pauli that is not a reset; it starts at the
    measured qubit farthest from the Pauli among those its condition reads.
    """
    arrows = []
    for ts in timesteps:
        for o in ts.ops:
            if o.gate.name != PAULI or _is_reset(o, measured_on):
                continue
            end = o.qubits[0]
            sources = [measured_on[i] for i in o.condition.ids if i in measured_on]
            if sources:
                arrows.append(Arrow(source=max(sources, key=lambda p: (distance(p, end), p)), target=end))
    return arrows


def swap_arrows(timesteps: Sequence[Timestep]) -> List[Arrow]:
    return [Arrow(*o.qubits) for ts in timesteps for o in ts.ops if o.gate.name == SWAP]


def qubit_roles(circuit: AdaptiveCircuit, touched: set) -> Dict[GridPoint, str]:
    """Every grid point gets exactly one role: data, intermediate or unused."""
    columns, rows = _grid_extent(circuit)
    data = set(circuit.inputs)
    roles = {}
    for x in range(columns):
        for y in range(rows):
            p = (x, y)
            roles[p] = DATA if p in data else INTERMEDIATE if p in touched else UNUSED
    return roles


def render(circuit: AdaptiveCircuit, spec: Optional[RenderSpec] = None) -> bytes:
    """
    Draw a 2D grid circuit as SVG.

    Raises:
        RenderError: If the circuit is not on a 2D grid or the timestep range
            is out of bounds.
    """
    spec = spec or RenderSpec()
    if circuit.dim != 2 or any(not is_grid_address(q) for q in circuit.qubits() | set(circuit.inputs)):
        raise RenderError(f"only 2D grid circuits can be drawn, got {circuit.model} with dim {circuit.dim}")

    columns, rows = _grid_extent(circuit)
    measured_on = {o.measurement_id: o.qubits[0] for o in circuit.ops() if o.gate.name == MEASURE}
    panel_width = 2 * MARGIN + max(columns - 1, 0) * CELL
    panel_height = 2 * MARGIN + max(rows - 1, 0) * CELL + TITLE_HEIGHT

    panels = []
    for i, (start, stop) in enumerate(spec.panels(len(circuit.timesteps))):
        window = circuit.timesteps[start:stop]
        touched = {q for ts in window for q in ts.qubits()}
        roles = qubit_roles(circuit, touched)
        panels.append(
            {
                "offset": i * panel_width,
                "title": f"t {start}" if stop - start <= 1 else f"t {start}-{stop - 1}",
                "qubits": [{"x": p[0], "y": rows - 1 - p[1], "role": role} for p, role in sorted(roles.items())],
                "chains": [_flip(a, rows) for a in chain_arrows(window, measured_on)],
                "swaps": [_flip(a, rows) for a in swap_arrows(window)],
            }
        )

    svg = render_to_string(
        "gridroute/grid.svg",
        {
            "width": panel_width * len(panels),
            "height": panel_height,
            "panels": panels,
            "kind": circuit.meta.get("kind", circuit.model),
        },
    )
    logger.debug("rendered %d panels of a %dx%d grid", len(panels), columns, rows)
    return svg.encode("utf-8")


def _flip(arrow: Arrow, rows: int) -> Dict[str, int]:
    """Image coordinates: row 0 at the bottom."""
    return {
        "x1": arrow.source[0],
        "y1": rows - 1 - arrow.source[1],
        "x2": arrow.target[0],
        "y2": rows - 1 - arrow.target[1],
    }
