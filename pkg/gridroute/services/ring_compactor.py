"""
Ring compaction

Non-adaptive controlled-U and fanout circuits on the m x m grid (and its
k-dimensional generalisation).

The controls sit on the odd positions of the outer rings. Moving inwards,
every ring ANDs the values of the ring outside it, together with its own
controls, into its ancillas (control_clockwise) and then shifts the results
one step back onto odd positions (rotate). The innermost 3x3 ring combines
its four values into two neighbours of the centre, which drive the central
controlled-U. Everything except that last gate is then undone in reverse.
Each stage runs on the same clock, so the depth is 2 * STAGE_DEPTH per ring
plus the central gate.
"""

import logging
from dataclasses import dataclass, replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .circuit_ir import (
    CNOT,
    CU,
    LOGICAL,
    MCX,
    NANTC,
    SINGLE_QUBIT_GATES,
    SWAP,
    AdaptiveCircuit,
    BasicOp,
    CircuitBuilder,
    GateSpec,
    Timestep,
    controlled,
    expand_op,
    fanout,
    mcx,
    op,
    timestep_layers,
)
from .grid_geom import DIRECTIONS, GeometryError, GridPoint, add, control_layout, ring_points, sub

logger = logging.getLogger(__name__)

X_GATE = GateSpec.named("X")

# Provenance labels used when turning a control circuit into a fanout circuit.
LEAF, ZERO, NODE = "leaf", "zero", "node"

# Every AND timestep of a stage is held for as many physical layers as the
# widest AND a ring needs (three controls), so each stage costs the same.
AND_LAYERS = len(expand_op(mcx([(1, 0), (0, 1), (2, 1)], (1, 1))))
STAGE_DEPTH = AND_LAYERS + 1


class CompactionError(Exception):
    """Raised for invalid grid sides, ring indices or payload gates."""

    pass


@dataclass(frozen=True)
class CompactionPlan:
    """
    Compute stages, central gate and uncompute suffix of a controlled-U circuit.

    `stages` holds one tuple of timesteps per ring (plus the base case and, in
    higher dimensions, the ladders along each extra axis). In the plane every
    stage is STAGE_DEPTH physical layers: the AND timestep, idle timesteps up
    to AND_LAYERS, then the SWAPs.
    """

    m: int
    dim: int
    stages: Tuple[Tuple[Timestep, ...], ...]
    central: Timestep
    uncompute_suffix: Tuple[Timestep, ...]

    @property
    def compute(self) -> Tuple[Timestep, ...]:
        return tuple(ts for stage in self.stages for ts in stage)

    @property
    def timesteps(self) -> Tuple[Timestep, ...]:
        return self.compute + (self.central,) + self.uncompute_suffix


def _check_side(m: int) -> None:
    if m < 3 or m % 2 == 0:
        raise CompactionError(f"grid side must be odd and at least 3, got {m}")


def _ring(m: int, k: int):
    try:
        return ring_points(m, k)
    except GeometryError as e:
        raise CompactionError(str(e)) from e


def _emit(ops: Sequence[BasicOp], into: Optional[CircuitBuilder]) -> Timestep:
    ts = Timestep(ops=tuple(ops), kind=LOGICAL)
    if into is not None:
        into.timestep(ts.ops, kind=LOGICAL)
    return ts


def control_clockwise(k: int, m: int, into: Optional[CircuitBuilder] = None) -> Timestep:
    """
    AND the values of ring k-1 and the controls of ring k into the ancillas of ring k.

    Values of the outer ring sit on its odd positions. Every corner ANDs its
    two outer neighbours; every even side position ANDs its predecessor with
    its outward neighbour, and the last even position of a side also takes
    its successor. Afterwards the ANDs sit on all even positions of ring k.

    Args:
        k: Ring index, 1 <= k < (m - 1) / 2.
        m: Odd grid side.
        into: Builder that receives the logical timestep, if given.

    Returns:
        The emitted timestep.

    Raises:
        CompactionError: If ring k has no outer ring or is the centre.
    """
    _check_side(m)
    h = (m - 1) // 2
    if not 1 <= k < h:
        raise CompactionError(f"control_clockwise needs 1 <= k < {h}, got {k}")

    ring = _ring(m, k)
    s = ring.side
    ops: List[BasicOp] = []
    for i in range(4):
        d_in, d_out = DIRECTIONS[i], DIRECTIONS[(i - 1) % 4]
        corner = ring.corners[i]
        ops.append(mcx([sub(corner, d_in), add(corner, d_out)], corner))
        for t in range(2, s - 2, 2):
            p = ring.side_point(i, t)
            controls = [ring.side_point(i, t - 1), add(p, d_out)]
            if t == s - 3:
                controls.append(ring.side_point(i, t + 1))
            ops.append(mcx(controls, p))
    return _emit(ops, into)


def rotate(k: int, m: int, into: Optional[CircuitBuilder] = None) -> Timestep:
    """SWAP ring positions (1, 2), (3, 4), ..., (last, 0) in one timestep."""
    _check_side(m)
    ring = _ring(m, k)
    if len(ring) < 2:
        raise CompactionError(f"ring {k} of m={m} is the centre and cannot rotate")
    ops = [op(SWAP, ring.at(i), ring.at(i + 1)) for i in range(1, len(ring), 2)]
    return _emit(ops, into)


def _held(ts: Timestep) -> Tuple[Timestep, ...]:
    idle = AND_LAYERS - len(timestep_layers(ts))
    if idle < 0:
        raise CompactionError(f"AND timestep needs {AND_LAYERS - idle} layers, the stage clock allows {AND_LAYERS}")
    return (ts,) + (Timestep(kind=LOGICAL),) * idle


def _central_op(gate: GateSpec, controls: Sequence[GridPoint], target: GridPoint) -> BasicOp:
    if gate.name not in SINGLE_QUBIT_GATES + (CU, MCX, CNOT):
        raise CompactionError(f"{gate.name} cannot be the controlled payload")
    return controlled(gate, controls, target)


def _base_case(m: int, gate: GateSpec) -> Tuple[Tuple[Timestep, ...], Timestep]:
    h = (m - 1) // 2
    k = 0 if m == 3 else h - 1
    toffolis = _emit(
        [
            mcx([(k, k + 1), (k + 1, k)], (k, k)),
            mcx([(k + 1, k + 2), (k + 2, k + 1)], (k + 2, k + 2)),
        ],
        None,
    )
    swaps = _emit([op(SWAP, (k, k), (k, k + 1)), op(SWAP, (k + 2, k + 1), (k + 2, k + 2))], None)
    central = _emit([_central_op(gate, [(k, k + 1), (k + 2, k + 1)], (k + 1, k + 1))], None)
    return _held(toffolis) + (swaps,), central


def _planar_plan(m: int, gate: GateSpec) -> CompactionPlan:
    h = (m - 1) // 2
    stages = []
    for k in range(1, h):
        stages.append(_held(control_clockwise(k, m)) + (rotate(k, m),))
    base, central = _base_case(m, gate)
    stages.append(base)
    compute = tuple(ts for stage in stages for ts in stage)
    return CompactionPlan(m=m, dim=2, stages=tuple(stages), central=central, uncompute_suffix=compute[::-1])


def _relocate(ts: Timestep, place: Callable[[GridPoint], GridPoint]) -> Timestep:
    return Timestep(
        ops=tuple(replace(o, qubits=tuple(place(q) for q in o.qubits)) for o in ts.ops),
        kind=ts.kind,
    )


def _ladder_stage(m: int, dim: int) -> Tuple[Timestep, ...]:
    """
    Collapse every column along the last axis onto the central hyperplane.

    For each control s of the (dim-1) layout the column through its partner
    a(s) accumulates the AND of the controls in the column through s, from
    both ends towards the centre. The two halves are combined at the centre
    and swapped onto s, where the (dim-1) construction expects its controls.
    """
    h = (m - 1) // 2
    partners = control_layout(m, dim - 1).partners
    first = (h - 1) % 2
    steps: List[List[BasicOp]] = [[] for _ in range(h - first)]
    combine: List[BasicOp] = []
    swaps: List[BasicOp] = []

    def is_control(z: int) -> bool:
        return (z - h) % 2 == 1

    for s, a in sorted(partners.items()):
        for start, step in ((first, 1), (m - 1 - first, -1)):
            for j in range(h - first):
                z = start + j * step
                acc, value = a + (z,), s + (z,)
                if j == 0:
                    steps[j].append(op(CNOT, value, acc))
                elif is_control(z):
                    steps[j].append(mcx([a + (z - step,), value], acc))
                else:
                    steps[j].append(op(CNOT, a + (z - step,), acc))
        combine.append(mcx([a + (h + 1,), a + (h - 1,)], a + (h,)))
        swaps.append(op(SWAP, a + (h,), s + (h,)))

    return tuple(_emit(ops, None) for ops in steps) + (_emit(combine, None), _emit(swaps, None))


def compaction_plan(m: int, dim: int = 2, gate: GateSpec = X_GATE) -> CompactionPlan:
    """
    Full compute / central / uncompute plan for a controlled-U on the m^dim grid.

    Raises:
        CompactionError: If m is even or below 3, dim < 2, or the payload is
            not a single-qubit gate.
    """
    _check_side(m)
    if dim < 2:
        raise CompactionError(f"control circuits need dim >= 2, got {dim}")
    if dim == 2:
        return _planar_plan(m, gate)

    h = (m - 1) // 2
    inner = compaction_plan(m, dim - 1, gate)

    def lift(p: GridPoint) -> GridPoint:
        return p + (h,)

    stages = (_ladder_stage(m, dim),) + tuple(
        tuple(_relocate(ts, lift) for ts in stage) for stage in inner.stages
    )
    compute = tuple(ts for stage in stages for ts in stage)
    return CompactionPlan(
        m=m,
        dim=dim,
        stages=stages,
        central=_relocate(inner.central, lift),
        uncompute_suffix=compute[::-1],
    )


def _circuit(m: int, dim: int, timesteps: Sequence[Timestep], meta: Dict) -> AdaptiveCircuit:
    layout = control_layout(m, dim)
    builder = CircuitBuilder(
        NANTC,
        dim,
        inputs=layout.ordered_controls() + [layout.target],
        shape=(m,) * dim,
        meta=meta,
    )
    for ts in timesteps:
        builder.timestep(ts.ops, kind=ts.kind)
    return builder.build()


def control_circuit(m: int, dim: int = 2, gate: GateSpec = X_GATE) -> AdaptiveCircuit:
    """
    NANTC circuit applying `gate` to the centre iff every control is 1.

    Controls, target and ancillas follow control_layout(m, dim). All ancillas
    start and end in |0>.
    """
    if dim > 2:
        return control_circuit_kd(m, dim, gate)
    plan = compaction_plan(m, 2, gate)
    circuit = _circuit(m, 2, plan.timesteps, {"kind": "control", "m": m, "dim": 2, "gate": gate.to_record()})
    logger.info("control circuit m=%d dim=2: %d logical timesteps", m, len(circuit.timesteps))
    return circuit


def control_circuit_kd(m: int, dim: int = 3, gate: GateSpec = X_GATE) -> AdaptiveCircuit:
    """Controlled-U on the m^dim grid, reducing one axis at a time onto the centre."""
    if dim < 3:
        raise CompactionError(f"control_circuit_kd needs dim >= 3, got {dim}")
    plan = compaction_plan(m, dim, gate)
    circuit = _circuit(m, dim, plan.timesteps, {"kind": "control", "m": m, "dim": dim, "gate": gate.to_record()})
    logger.info("control circuit m=%d dim=%d: %d logical timesteps", m, dim, len(circuit.timesteps))
    return circuit


def _reversed_as_fanout(
    timesteps: Sequence[Timestep],
    labels: Dict[GridPoint, str],
    centre: GridPoint,
    nodes_only: bool,
) -> List[Timestep]:
    result = []
    for ts in reversed(timesteps):
        ops: List[BasicOp] = []
        toggled = []
        for o in ts.ops:
            if o.gate.name == SWAP:
                a, b = o.qubits
                labels[a], labels[b] = labels[b], labels[a]
                ops.append(o)
                continue
            source, children = o.qubits[-1], list(o.qubits[:-1])
            if nodes_only:
                children = [c for c in children if labels[c] == NODE]
            if children:
                ops.append(fanout(source, children))
            if source != centre:
                toggled.append(source)
        for q in toggled:
            labels[q] = NODE if labels[q] == ZERO else ZERO
        result.append(Timestep(ops=tuple(ops), kind=ts.kind))
    return result


def fanout_circuit(m: int, dim: int = 2) -> AdaptiveCircuit:
    """
    NANTC circuit XOR-ing the centre into every control position.

    The control circuit is replayed in reverse with every AND replaced by a
    fanout from its target onto its inputs. That pass leaves copies of the
    centre in the intermediate ancillas, so the same reversed sequence runs
    again, this time fanning out only onto inputs that held an intermediate
    AND, which clears them.
    """
    plan = compaction_plan(m, dim, X_GATE)
    layout = control_layout(m, dim)
    timesteps = plan.timesteps

    labels: Dict[GridPoint, str] = {p: ZERO for p in layout.ancillas}
    labels.update({p: LEAF for p in layout.controls})
    labels[layout.target] = ZERO
    spread = _reversed_as_fanout(timesteps, labels, layout.target, nodes_only=False)
    cleanup = _reversed_as_fanout(timesteps, labels, layout.target, nodes_only=True)

    circuit = _circuit(m, dim, spread + cleanup, {"kind": "fanout", "m": m, "dim": dim})
    logger.info("fanout circuit m=%d dim=%d: %d logical timesteps", m, dim, len(circuit.timesteps))
    return circuit
