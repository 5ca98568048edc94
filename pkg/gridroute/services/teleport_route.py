"""
Teleportation routing on the 2D grid

Teleportation chains move a qubit state any distance along a grid line in a
fixed number of timesteps: Bell pairs are laid along the line, every Bell
measurement happens at once, and a single Pauli, conditioned on the parity
of the outcomes, repairs the destination.

On top of the chains this module builds the reordering and interaction
routers and compiles a whole CCAC circuit onto an n x n CCNTC grid.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .circuit_ir import (
    CCAC,
    CCNTC,
    CNOT,
    MEASURE,
    PAULI,
    SWAP,
    AdaptiveCircuit,
    BasicOp,
    Block,
    CircuitBuilder,
    ClassicalCondition,
    GateSpec,
    Timestep,
    op,
)
from .grid_geom import GridPoint, is_adjacent
from .pauli_frame import BellOutcome, correction_condition

logger = logging.getLogger(__name__)

# Chain frame: 0 H, 1 CNOT (pairs), 2 CNOT (Bell measure), 3 H, 4 measure,
# 5 correction, 6 final SWAP for odd distances and for single hops.
CHAIN_FRAME = 7
REORDER_DEPTH = 2 * (CHAIN_FRAME + 1)
INTERACT_DEPTH = 2 * REORDER_DEPTH + 1


class RoutingError(Exception):
    """Raised for invalid routing specs or chain geometry."""

    pass


@dataclass(frozen=True)
class ReorderSpec:
    """
    Move the data qubit at (0, j) to (moves[j], 0) for every row j in T.

    Data qubits start in column 0; rows outside T stay where they are.
    """

    n: int
    moves: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "moves", dict(sorted(self.moves.items())))
        if self.n < 1:
            raise RoutingError(f"grid side must be positive, got {self.n}")
        for j, column in self.moves.items():
            if not (0 <= j < self.n and 0 <= column < self.n):
                raise RoutingError(f"move {j} -> {column} leaves the {self.n}x{self.n} grid")
        if len(set(self.moves.values())) != len(self.moves):
            raise RoutingError("target columns must be distinct (pi is not injective)")
        for j, column in self.moves.items():
            blocking = [k for k in range(j) if k not in self.moves]
            if column == 0 and blocking:
                raise RoutingError(
                    f"row {j} moves to column 0 but rows {blocking} below it stay in column 0"
                )

    @property
    def T(self) -> FrozenSet[int]:
        return frozenset(self.moves)

    def pi(self, j: int) -> int:
        return self.moves[j]

    @property
    def horizontal_moves(self) -> int:
        """Rows whose target column is not 0."""
        return sum(1 for c in self.moves.values() if c != 0)


@dataclass(frozen=True)
class InteractionItem:
    """
    One operation of an interaction round on data qubits `qubits`.

    `condition` and `measurement_id` use the ids of the circuit the round
    came from; the compiler maps them onto fresh ids.
    """

    qubits: Tuple[int, ...]
    gate: GateSpec
    condition: Optional[ClassicalCondition] = None
    measurement_id: Optional[int] = None


@dataclass(frozen=True)
class InteractionSpec:
    n: int
    items: Tuple[InteractionItem, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        used: set = set()
        last_size = 1
        for k, item in enumerate(self.items):
            if len(item.qubits) not in (1, 2):
                raise RoutingError(f"item {k} acts on {len(item.qubits)} qubits; only 1 or 2 allowed")
            if item.gate.arity != len(item.qubits):
                raise RoutingError(f"item {k}: {item.gate.name} does not act on {len(item.qubits)} qubits")
            if any(not 0 <= j < self.n for j in item.qubits):
                raise RoutingError(f"item {k} addresses a qubit outside 0..{self.n - 1}")
            if used.intersection(item.qubits):
                raise RoutingError(f"item {k} overlaps an earlier item on {sorted(used.intersection(item.qubits))}")
            if len(item.qubits) < last_size:
                raise RoutingError(f"item {k} is a singleton after a pair")
            used.update(item.qubits)
            last_size = len(item.qubits)


def _check_adjacent(a: GridPoint, b: GridPoint) -> None:
    if not is_adjacent(a, b):
        raise RoutingError(f"{a} and {b} are not neighbours")


def emit_bell_pair(a: GridPoint, b: GridPoint, into: Block, layer: int = 0) -> None:
    """H on a then CNOT a -> b; two |0> qubits become Phi_0."""
    _check_adjacent(a, b)
    into.add(layer, op("H", a))
    into.add(layer + 1, op(CNOT, a, b))


def emit_bell_measure(a: GridPoint, b: GridPoint, into: Block, layer: int = 0) -> BellOutcome:
    """
    CNOT a -> b, H on a, then measure both.

    Returns:
        Wiring of the outcome: phase bit from a, flip bit from b.
    """
    _check_adjacent(a, b)
    into.add(layer, op(CNOT, a, b))
    into.add(layer + 1, op("H", a))
    phase = into.measure(layer + 2, a)
    flip = into.measure(layer + 2, b)
    return BellOutcome(phase_id=phase, flip_id=flip)


def _check_line(line: Sequence[GridPoint]) -> None:
    if len(line) < 2:
        return
    for a, b in zip(line, line[1:]):
        _check_adjacent(a, b)
    varying = {axis for axis in range(len(line[0])) if len({p[axis] for p in line}) > 1}
    if len(varying) > 1:
        raise RoutingError(f"chain points are not collinear: {list(line)}")
    if len(set(line)) != len(line):
        raise RoutingError("chain revisits a point")


def emit_chain(line: Sequence[GridPoint], into: Block, layer: int = 0) -> Dict[GridPoint, int]:
    """
    Move the state at line[0] to line[-1] inside one chain frame.

    Intermediate points and the destination must hold |0>. Odd distances
    teleport over the even prefix and finish with a SWAP; a single hop is
    just a SWAP.

    Returns:
        Measurement id of every qubit the chain measured, for resetting.

    Raises:
        RoutingError: If the points are not a straight run of neighbours.
    """
    line = list(line)
    _check_line(line)
    d = len(line) - 1
    measured: Dict[GridPoint, int] = {}
    if d == 0:
        return measured
    if d == 1:
        into.add(layer + CHAIN_FRAME - 1, op(SWAP, line[0], line[1]))
        return measured

    even = d if d % 2 == 0 else d - 1
    for i in range(1, even, 2):
        emit_bell_pair(line[i], line[i + 1], into, layer)
    outcomes = []
    for i in range(0, even, 2):
        outcome = emit_bell_measure(line[i], line[i + 1], into, layer + 2)
        measured[line[i]] = outcome.phase_id
        measured[line[i + 1]] = outcome.flip_id
        outcomes.append(outcome)
    into.pauli(layer + 5, line[even], correction_condition(outcomes))
    if d != even:
        into.add(layer + 6, op(SWAP, line[d - 1], line[d]))
    return measured


def emit_reset(qubits: Iterable[GridPoint], measured: Mapping[GridPoint, int], into: Block, layer: int = 0) -> None:
    """
    Return measured qubits to |0> with an X conditioned on their own outcome.

    Raises:
        RoutingError: If a qubit has no recorded measurement.
    """
    for q in qubits:
        if q not in measured:
            raise RoutingError(f"cannot reset {q}: it was not measured")
        into.pauli(layer, q, ClassicalCondition(x_parity_of=frozenset({measured[q]})))


def _run_phase(builder: CircuitBuilder, lines: List[List[GridPoint]]) -> None:
    frame = builder.block(CHAIN_FRAME, fixed=True)
    measured: Dict[GridPoint, int] = {}
    for line in lines:
        measured.update(emit_chain(line, frame))
    reset = builder.block(1, fixed=True)
    emit_reset(sorted(measured), measured, reset)


def _reorder_into(builder: CircuitBuilder, spec: ReorderSpec, reverse: bool = False) -> None:
    horizontal = [
        [(c, j) for c in range(spec.pi(j) + 1)]
        for j in sorted(spec.T)
        if spec.pi(j) > 0
    ]
    vertical = [
        [(spec.pi(j), r) for r in range(j, -1, -1)]
        for j in sorted(spec.T)
        if j > 0
    ]
    if not reverse:
        _run_phase(builder, horizontal)
        _run_phase(builder, vertical)
    else:
        _run_phase(builder, [line[::-1] for line in vertical])
        _run_phase(builder, [line[::-1] for line in horizontal])


def _grid_builder(n: int, meta: Mapping) -> CircuitBuilder:
    return CircuitBuilder(CCNTC, 2, inputs=[(0, j) for j in range(n)], shape=(n, n), meta=meta)


def reorder(spec: ReorderSpec) -> AdaptiveCircuit:
    """
    Teleport the data qubit of every row j in T from (0, j) to (pi(j), 0).

    Phase one runs the horizontal chains of all rows in parallel, phase two
    the vertical chains of all columns; measured qubits are reset after each
    phase. Both phases run on a fixed clock, idle when nothing moves, so the
    depth is REORDER_DEPTH for every grid size and every T.
    """
    builder = _grid_builder(spec.n, {"kind": "reorder", "n": spec.n, "moves": [[j, c] for j, c in spec.moves.items()]})
    _reorder_into(builder, spec)
    circuit = builder.build()
    logger.info("reorder n=%d |T|=%d: %d timesteps", spec.n, len(spec.T), len(circuit.timesteps))
    return circuit


def pairing(spec: InteractionSpec) -> ReorderSpec:
    """
    Place every pair on consecutive columns of row 0.

    Pairs start at column 1 whenever some data qubit is not part of a pair,
    so that qubit keeps column 0 to itself.
    """
    pairs = [item.qubits for item in spec.items if len(item.qubits) == 2]
    paired = {j for p in pairs for j in p}
    column = 1 if len(paired) < spec.n else 0
    moves: Dict[int, int] = {}
    for p in pairs:
        low, high = sorted(p)
        moves[low], moves[high] = column, column + 1
        column += 2
    return ReorderSpec(n=spec.n, moves=moves)


def _interact_into(builder: CircuitBuilder, spec: InteractionSpec, id_map: Dict[int, int]) -> None:
    """Emit one round in exactly INTERACT_DEPTH timesteps, whatever it contains."""
    placement = pairing(spec)
    _reorder_into(builder, placement)

    def position(j: int) -> GridPoint:
        return (placement.pi(j), 0) if j in placement.T else (0, j)

    layer = builder.block(1, fixed=True)
    for item in spec.items:
        qubits = tuple(position(j) for j in item.qubits)
        if item.gate.name == MEASURE:
            mid = layer.measure(0, qubits[0])
            if item.measurement_id is not None:
                id_map[item.measurement_id] = mid
        elif item.gate.name == PAULI:
            try:
                layer.pauli(0, qubits[0], item.condition.remap(id_map))
            except KeyError as e:
                raise RoutingError(f"condition on measurement {e.args[0]} that was never taken") from e
        else:
            layer.add(0, BasicOp(gate=item.gate, qubits=qubits))

    _reorder_into(builder, placement, reverse=True)


def item_record(item: InteractionItem) -> Dict:
    """Plain-JSON form of an interaction item, as stored in circuit meta."""
    condition = None
    if item.condition is not None:
        condition = {
            "x_parity_of": sorted(item.condition.x_parity_of),
            "z_parity_of": sorted(item.condition.z_parity_of),
        }
    return {
        "qubits": list(item.qubits),
        "gate": item.gate.to_record(),
        "condition": condition,
        "measurement_id": item.measurement_id,
    }


def item_from_record(record: Mapping) -> InteractionItem:
    condition = record.get("condition")
    if condition is not None:
        condition = ClassicalCondition(
            x_parity_of=frozenset(condition.get("x_parity_of", ())),
            z_parity_of=frozenset(condition.get("z_parity_of", ())),
        )
    return InteractionItem(
        qubits=tuple(record["qubits"]),
        gate=GateSpec.from_record(record["gate"]),
        condition=condition,
        measurement_id=record.get("measurement_id"),
    )


def _with_measurements(circuit: AdaptiveCircuit, builder: CircuitBuilder, id_map: Mapping[int, int]) -> AdaptiveCircuit:
    pairs = sorted([source, builder.measurement_ids[provisional]] for source, provisional in id_map.items())
    return replace(circuit, meta={**circuit.meta, "measurements": pairs})


def interact(spec: InteractionSpec) -> AdaptiveCircuit:
    """
    Apply every item of an interaction round on the n x n grid.

    Pairs are teleported next to each other in row 0, all items run in one
    timestep and the reverse teleportations put every data qubit back in
    column 0. meta["measurements"] pairs the measurement ids of the items
    with the ids they received in the compiled circuit.
    """
    meta = {"kind": "interact", "n": spec.n, "items": [item_record(item) for item in spec.items]}
    builder = _grid_builder(spec.n, meta)
    id_map: Dict[int, int] = {}
    _interact_into(builder, spec, id_map)
    return _with_measurements(builder.build(), builder, id_map)


def interaction_rounds(ccac: AdaptiveCircuit) -> List[InteractionSpec]:
    """
    Split a CCAC circuit into one interaction round per timestep.

    Raises:
        RoutingError: If the circuit is not CCAC or uses an operation on more
            than two qubits.
    """
    if ccac.model != CCAC:
        raise RoutingError(f"expected a CCAC circuit, got {ccac.model}")
    n = ccac_width(ccac)
    rounds = []
    for i, ts in enumerate(ccac.timesteps):
        wide = [o for o in ts.ops if len(o.qubits) > 2]
        if wide:
            raise RoutingError(f"timestep {i}: {wide[0].gate.name} acts on {len(wide[0].qubits)} qubits")
        ordered = sorted(ts.ops, key=lambda o: len(o.qubits))
        items = tuple(
            InteractionItem(qubits=tuple(o.qubits), gate=o.gate, condition=o.condition, measurement_id=o.measurement_id)
            for o in ordered
        )
        rounds.append(InteractionSpec(n=n, items=items))
    return rounds


def rounds_circuit(n: int, rounds: Sequence[Sequence[InteractionItem]]) -> AdaptiveCircuit:
    """The CCAC circuit with one timestep per round, on data qubits 0..n-1."""
    timesteps = [
        Timestep(
            ops=tuple(
                BasicOp(gate=item.gate, qubits=item.qubits, condition=item.condition, measurement_id=item.measurement_id)
                for item in items
            )
        )
        for items in rounds
    ]
    return AdaptiveCircuit(model=CCAC, dim=1, timesteps=tuple(timesteps), inputs=tuple(range(n)))


def ccac_width(ccac: AdaptiveCircuit) -> int:
    touched = ccac.qubits() | set(ccac.inputs)
    bad = [q for q in touched if not isinstance(q, int) or q < 0]
    if bad:
        raise RoutingError(f"CCAC qubits must be non-negative integers, got {bad[:3]}")
    return max(touched) + 1 if touched else 0


def simulate_ccac(ccac: AdaptiveCircuit) -> AdaptiveCircuit:
    """
    Compile a CCAC circuit of width n onto the n x n CCNTC grid.

    Data qubit j lives at (0, j). Every CCAC timestep becomes one interaction
    block of INTERACT_DEPTH timesteps, so the depth is exactly INTERACT_DEPTH
    times the source depth. The rounds are kept in meta["rounds"] so the
    result can be checked against the source.
    """
    rounds = interaction_rounds(ccac)
    n = ccac_width(ccac)
    meta = {
        "kind": "ccac",
        "n": n,
        "rounds": [[item_record(item) for item in spec.items] for spec in rounds],
    }
    builder = _grid_builder(n, meta)
    id_map: Dict[int, int] = {}
    for spec in rounds:
        _interact_into(builder, spec, id_map)
    circuit = _with_measurements(builder.build(), builder, id_map)
    logger.info("compiled CCAC circuit: %d timesteps -> %d on a %dx%d grid", len(ccac.timesteps), len(circuit.timesteps), n, n)
    return circuit


def touched_qubit_bound(spec: ReorderSpec) -> int:
    """Upper bound on the qubits reorder(spec) acts on: (2m + 1) n."""
    return (2 * spec.horizontal_moves + 1) * spec.n
