"""
Circuit IR

One intermediate representation for the three machine models:

    NANTC  non-adaptive circuits on the grid (no classical feedback)
    CCAC   classically controlled circuits with arbitrary-pair gates
    CCNTC  classically controlled circuits on the grid

Addresses are grid points (tuples) for the grid models and plain integers
for CCAC. A circuit is an ordered list of timesteps; a timestep is a set of
disjoint operations and is either physical (1- and 2-qubit gates only) or
logical (small star-shaped operations that expand into a fixed physical
sequence). Metrics are computed after that expansion.
"""

import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

import numpy as np
from scipy import linalg

from .grid_geom import GridPoint, distance

logger = logging.getLogger(__name__)

Address = Union[GridPoint, int]
Matrix2 = Tuple[complex, complex, complex, complex]

NANTC, CCAC, CCNTC = "NANTC", "CCAC", "CCNTC"
MODELS = (NANTC, CCAC, CCNTC)
GRID_MODELS = (NANTC, CCNTC)

PHYSICAL, LOGICAL = "physical", "logical"
TIMESTEP_KINDS = (PHYSICAL, LOGICAL)

CNOT, SWAP, MCX, CU, FANOUT, MEASURE, PAULI = "CNOT", "SWAP", "MCX", "CU", "FANOUT", "MEASURE", "PAULI"
SINGLE_QUBIT_GATES = ("I", "H", "X", "Y", "Z", "S", "SDG", "T", "TDG")
CLIFFORD_GATES = frozenset({"I", "H", "X", "Y", "Z", "S", "SDG", CNOT, SWAP, MEASURE, PAULI})
GATE_NAMES = SINGLE_QUBIT_GATES + (CNOT, SWAP, MCX, CU, FANOUT, MEASURE, PAULI)

UNITARY_TOLERANCE = 1e-12
MAX_LOGICAL_ARITY = 4


class CircuitError(Exception):
    """Raised when a gate, operation or circuit cannot be constructed."""

    pass


def is_grid_address(q: Address) -> bool:
    return isinstance(q, tuple)


def as_matrix(payload: Matrix2) -> np.ndarray:
    return np.array(payload, dtype=complex).reshape(2, 2)


def as_payload(matrix: np.ndarray) -> Matrix2:
    flat = np.asarray(matrix, dtype=complex).reshape(4)
    return tuple(complex(v) for v in flat)


@dataclass(frozen=True)
class GateSpec:
    """
    Gate kind plus the parameters that fix its arity.

    MCX and CU take `controls` control qubits followed by one target; FANOUT
    takes one source followed by `targets` targets. CU carries its 2x2
    unitary as four complex numbers in row-major order.
    """

    name: str
    controls: int = 0
    targets: int = 1
    matrix: Optional[Matrix2] = None

    def __post_init__(self):
        if self.name not in GATE_NAMES:
            raise CircuitError(f"unknown gate {self.name!r}")
        if self.name in (MCX, CU):
            if self.controls < 1:
                raise CircuitError(f"{self.name} needs at least one control")
        elif self.controls:
            raise CircuitError(f"{self.name} takes no controls")
        if self.name == FANOUT:
            if self.targets < 1:
                raise CircuitError("FANOUT needs at least one target")
        elif self.targets != 1:
            raise CircuitError(f"{self.name} has exactly one target")
        if self.name == CU:
            if self.matrix is None or len(self.matrix) != 4:
                raise CircuitError("CU needs a 2x2 unitary payload")
            u = as_matrix(self.matrix)
            if np.max(np.abs(u @ u.conj().T - np.eye(2))) > UNITARY_TOLERANCE:
                raise CircuitError("CU payload is not unitary within 1e-12")
        elif self.matrix is not None:
            raise CircuitError(f"{self.name} takes no matrix payload")

    @classmethod
    def named(cls, name: str) -> "GateSpec":
        return cls(name=name)

    @classmethod
    def mcx(cls, controls: int) -> "GateSpec":
        return cls(name=MCX, controls=controls)

    @classmethod
    def cu(cls, matrix: Union[Matrix2, np.ndarray], controls: int = 1) -> "GateSpec":
        payload = matrix if isinstance(matrix, tuple) else as_payload(matrix)
        return cls(name=CU, controls=controls, matrix=payload)

    @classmethod
    def fanout(cls, targets: int) -> "GateSpec":
        return cls(name=FANOUT, targets=targets)

    @property
    def arity(self) -> int:
        if self.name in (MCX, CU):
            return self.controls + 1
        if self.name == FANOUT:
            return self.targets + 1
        if self.name in (CNOT, SWAP):
            return 2
        return 1

    @property
    def is_clifford(self) -> bool:
        if self.name in CLIFFORD_GATES:
            return True
        return (self.name == MCX and self.controls == 1) or self.name == FANOUT

    @property
    def is_permutation(self) -> bool:
        """True for gates that permute computational basis states."""
        return self.name in ("I", "X", CNOT, SWAP, MCX, FANOUT)

    def to_record(self) -> Dict[str, Any]:
        """Plain-JSON form: {"name", "controls", "targets", "matrix": [[re, im] x 4] | None}."""
        matrix = None
        if self.matrix is not None:
            matrix = [[float(v.real), float(v.imag)] for v in self.matrix]
        return {"name": self.name, "controls": self.controls, "targets": self.targets, "matrix": matrix}

    @classmethod
    def from_record(cls, record: Mapping[str, Any]) -> "GateSpec":
        matrix = record.get("matrix")
        payload = None if matrix is None else tuple(complex(re, im) for re, im in matrix)
        return cls(
            name=record["name"],
            controls=record.get("controls", 0),
            targets=record.get("targets", 1),
            matrix=payload,
        )

    def unitary(self) -> np.ndarray:
        """The 2x2 matrix applied to the target of a single-qubit or controlled gate."""
        if self.name == CU:
            return as_matrix(self.matrix)
        if self.name in (MCX, CNOT, FANOUT):
            return GATE_MATRICES["X"]
        if self.name in GATE_MATRICES:
            return GATE_MATRICES[self.name]
        raise CircuitError(f"{self.name} has no 2x2 matrix")


_S2 = 1 / np.sqrt(2)
GATE_MATRICES: Dict[str, np.ndarray] = {
    "I": np.eye(2, dtype=complex),
    "H": np.array([[_S2, _S2], [_S2, -_S2]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "SDG": np.array([[1, 0], [0, -1j]], dtype=complex),
    "T": np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=complex),
    "TDG": np.array([[1, 0], [0, np.exp(-1j * np.pi / 4)]], dtype=complex),
}


@dataclass(frozen=True)
class ClassicalCondition:
    """Apply X^(parity of x_parity_of) Z^(parity of z_parity_of)."""

    x_parity_of: FrozenSet[int] = frozenset()
    z_parity_of: FrozenSet[int] = frozenset()

    @property
    def ids(self) -> FrozenSet[int]:
        return self.x_parity_of | self.z_parity_of

    @property
    def is_empty(self) -> bool:
        return not self.x_parity_of and not self.z_parity_of

    def evaluate(self, record: Mapping[int, int]) -> Tuple[int, int]:
        """(x, z) bits of the Pauli selected by the measurement record."""
        try:
            x = sum(record[i] for i in self.x_parity_of) % 2
            z = sum(record[i] for i in self.z_parity_of) % 2
        except KeyError as e:
            raise CircuitError(f"condition references unrecorded measurement {e.args[0]}") from e
        return x, z

    def remap(self, mapping: Mapping[int, int]) -> "ClassicalCondition":
        return ClassicalCondition(
            x_parity_of=frozenset(mapping[i] for i in self.x_parity_of),
            z_parity_of=frozenset(mapping[i] for i in self.z_parity_of),
        )


@dataclass(frozen=True)
class BasicOp:
    gate: GateSpec
    qubits: Tuple[Address, ...]
    condition: Optional[ClassicalCondition] = None
    measurement_id: Optional[int] = None

    def __post_init__(self):
        if len(set(self.qubits)) != len(self.qubits):
            raise CircuitError(f"duplicate qubits in {self.gate.name} on {self.qubits}")
        if len(self.qubits) != self.gate.arity:
            raise CircuitError(
                f"{self.gate.name} expects {self.gate.arity} qubits, got {len(self.qubits)}"
            )
        if (self.gate.name == MEASURE) != (self.measurement_id is not None):
            raise CircuitError("measurement ids belong to MEASURE operations only")
        if self.condition is not None and self.gate.name != PAULI:
            raise CircuitError("only PAULI operations may be classically conditioned")
        if self.gate.name == PAULI and self.condition is None:
            raise CircuitError("PAULI operations need a classical condition")

    @property
    def hub(self) -> Optional[Address]:
        """The qubit every other qubit of a star-shaped operation must neighbour."""
        if self.gate.name in (MCX, CU):
            return self.qubits[-1]
        if self.gate.name == FANOUT:
            return self.qubits[0]
        return None


def op(name: str, *qubits: Address) -> BasicOp:
    """Shorthand for an unconditioned named gate."""
    return BasicOp(gate=GateSpec.named(name), qubits=tuple(qubits))


def mcx(controls: Sequence[Address], target: Address) -> BasicOp:
    return BasicOp(gate=GateSpec.mcx(len(controls)), qubits=tuple(controls) + (target,))


def fanout(source: Address, targets: Sequence[Address]) -> BasicOp:
    return BasicOp(gate=GateSpec.fanout(len(targets)), qubits=(source,) + tuple(targets))


def controlled(gate: GateSpec, controls: Sequence[Address], target: Address) -> BasicOp:
    """Controlled version of a single-qubit gate (X becomes MCX)."""
    if gate.name in ("X", MCX, CNOT):
        return mcx(controls, target)
    matrix = gate.unitary()
    return BasicOp(gate=GateSpec.cu(matrix, controls=len(controls)), qubits=tuple(controls) + (target,))


@dataclass(frozen=True)
class Timestep:
    ops: Tuple[BasicOp, ...] = ()
    kind: str = PHYSICAL

    def __post_init__(self):
        if self.kind not in TIMESTEP_KINDS:
            raise CircuitError(f"unknown timestep kind {self.kind!r}")

    def qubits(self) -> Set[Address]:
        return {q for o in self.ops for q in o.qubits}


@dataclass(frozen=True)
class AdaptiveCircuit:
    """
    A circuit in one of the three models.

    `inputs` lists the addresses of the declared data qubits, `shape` the grid
    extent per axis (empty for CCAC) and `meta` records which generator built
    the circuit and with which parameters.
    """

    model: str
    dim: int
    timesteps: Tuple[Timestep, ...] = ()
    inputs: Tuple[Address, ...] = ()
    shape: Tuple[int, ...] = ()
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.model not in MODELS:
            raise CircuitError(f"unknown model {self.model!r}")

    @property
    def n_inputs(self) -> int:
        return len(self.inputs)

    @property
    def measurement_count(self) -> int:
        return sum(1 for o in self.ops() if o.gate.name == MEASURE)

    def ops(self) -> Iterable[BasicOp]:
        for ts in self.timesteps:
            yield from ts.ops

    def qubits(self) -> Set[Address]:
        return {q for ts in self.timesteps for q in ts.qubits()}

    def with_timesteps(self, timesteps: Iterable[Timestep]) -> "AdaptiveCircuit":
        return replace(self, timesteps=tuple(timesteps))


class Block:
    """
    A run of consecutive timesteps filled in layer by layer.

    Generators use blocks to emit several chains in parallel: each chain
    writes to the layers it needs and the block keeps them aligned.
    """

    def __init__(self, builder: "CircuitBuilder", layers: int, kind: str = PHYSICAL, fixed: bool = False):
        self._builder = builder
        self.kind = kind
        self.fixed = fixed
        self.layers: List[List[BasicOp]] = [[] for _ in range(layers)]

    def _grow(self, layer: int) -> None:
        if layer >= len(self.layers):
            if self.fixed:
                raise CircuitError(f"layer {layer} is outside a fixed block of {len(self.layers)}")
            self.layers.extend([] for _ in range(layer + 1 - len(self.layers)))

    def add(self, layer: int, operation: BasicOp) -> None:
        self._grow(layer)
        self.layers[layer].append(operation)

    def measure(self, layer: int, qubit: Address) -> int:
        mid = self._builder.new_measurement()
        self.add(layer, BasicOp(gate=GateSpec.named(MEASURE), qubits=(qubit,), measurement_id=mid))
        return mid

    def pauli(self, layer: int, qubit: Address, condition: ClassicalCondition) -> None:
        if condition.is_empty:
            return
        self.add(layer, BasicOp(gate=GateSpec.named(PAULI), qubits=(qubit,), condition=condition))

    @property
    def depth(self) -> int:
        return len(self.layers)

    def timesteps(self) -> List[Timestep]:
        return [
            Timestep(ops=tuple(layer), kind=self.kind)
            for layer in self.layers
            if layer or self.fixed
        ]


class CircuitBuilder:
    """
    Single-owner accumulator for AdaptiveCircuit.

    Measurement ids handed out while building are provisional; `build`
    renumbers them in timestep order and rewrites every condition.
    """

    def __init__(
        self,
        model: str,
        dim: int,
        *,
        inputs: Sequence[Address] = (),
        shape: Sequence[int] = (),
        meta: Optional[Mapping[str, Any]] = None,
    ):
        if model not in MODELS:
            raise CircuitError(f"unknown model {model!r}")
        self.model = model
        self.dim = dim
        self.inputs = tuple(inputs)
        self.shape = tuple(shape)
        self.meta = dict(meta or {})
        self._entries: List[Union[Timestep, Block]] = []
        self._next_measurement = 0
        self.measurement_ids: Dict[int, int] = {}

    def new_measurement(self) -> int:
        mid = self._next_measurement
        self._next_measurement += 1
        return mid

    def timestep(self, ops: Iterable[BasicOp], kind: str = PHYSICAL) -> None:
        ops = tuple(ops)
        if ops:
            self._entries.append(Timestep(ops=ops, kind=kind))

    def block(self, layers: int = 0, kind: str = PHYSICAL, fixed: bool = False) -> Block:
        block = Block(self, layers, kind=kind, fixed=fixed)
        self._entries.append(block)
        return block

    def build(self) -> AdaptiveCircuit:
        """Assemble the circuit; `measurement_ids` then maps provisional ids to final ones."""
        timesteps: List[Timestep] = []
        for entry in self._entries:
            if isinstance(entry, Block):
                timesteps.extend(entry.timesteps())
            else:
                timesteps.append(entry)
        renumbered, self.measurement_ids = renumber_measurements(timesteps)
        return AdaptiveCircuit(
            model=self.model,
            dim=self.dim,
            timesteps=tuple(renumbered),
            inputs=self.inputs,
            shape=self.shape,
            meta=self.meta,
        )


def renumber_measurements(timesteps: Sequence[Timestep]) -> Tuple[List[Timestep], Dict[int, int]]:
    """Number measurements 0, 1, ... in timestep order and rewrite conditions to match."""
    mapping: Dict[int, int] = {}
    for ts in timesteps:
        for o in ts.ops:
            if o.measurement_id is not None:
                mapping[o.measurement_id] = len(mapping)
    result = []
    for ts in timesteps:
        ops = []
        for o in ts.ops:
            if o.measurement_id is not None:
                o = replace(o, measurement_id=mapping[o.measurement_id])
            if o.condition is not None:
                try:
                    o = replace(o, condition=o.condition.remap(mapping))
                except KeyError as e:
                    raise CircuitError(f"condition on unknown measurement {e.args[0]}") from e
            ops.append(o)
        result.append(Timestep(ops=tuple(ops), kind=ts.kind))
    return result, mapping


# Validation


@dataclass(frozen=True)
class Violation:
    timestep: int
    op: Optional[int]
    code: str
    message: str

    def __str__(self):
        where = f"timestep {self.timestep}" + (f", op {self.op}" if self.op is not None else "")
        return f"{where}: {self.code}: {self.message}"


def timestep_violations(ts: Timestep, model: str, dim: int, index: int = 0, shape: Sequence[int] = ()) -> List[Violation]:
    """Locality and disjointness problems of a single timestep."""
    found: List[Violation] = []
    seen: Set[Address] = set()
    grid = model in GRID_MODELS
    for j, o in enumerate(ts.ops):
        overlap = seen.intersection(o.qubits)
        if overlap:
            found.append(Violation(index, j, "overlap", f"qubits {sorted(overlap, key=str)} already used"))
        seen.update(o.qubits)

        bad_address = [
            q for q in o.qubits
            if (grid and not (is_grid_address(q) and len(q) == dim))
            or (not grid and not isinstance(q, int))
        ]
        if bad_address:
            found.append(Violation(index, j, "address", f"{bad_address} are not {model} addresses"))
            continue
        if grid and shape:
            outside = [q for q in o.qubits if any(not 0 <= c < s for c, s in zip(q, shape))]
            if outside:
                found.append(Violation(index, j, "out-of-bounds", f"{outside} lie outside {tuple(shape)}"))

        arity = len(o.qubits)
        if ts.kind == PHYSICAL and arity > 2:
            found.append(Violation(index, j, "arity", f"{o.gate.name} on {arity} qubits in a physical timestep"))
            continue
        if ts.kind == LOGICAL and grid and arity > MAX_LOGICAL_ARITY:
            found.append(Violation(index, j, "arity", f"{o.gate.name} on {arity} qubits exceeds {MAX_LOGICAL_ARITY}"))
            continue
        if grid and arity >= 2:
            hub = o.hub if arity > 2 else o.qubits[0]
            far = [q for q in o.qubits if q != hub and distance(q, hub) != 1]
            if far:
                code = "non-adjacent" if arity == 2 else "not-star"
                found.append(Violation(index, j, code, f"{far} not adjacent to {hub}"))
    return found


def validate(circuit: AdaptiveCircuit) -> List[Violation]:
    """
    Every model violation in the circuit; an empty list means valid.

    Checks disjointness, locality on grid models, measurement-id uniqueness
    and that conditions only look at strictly earlier timesteps.
    """
    found: List[Violation] = []
    measured_before: Set[int] = set()
    for i, ts in enumerate(circuit.timesteps):
        found.extend(timestep_violations(ts, circuit.model, circuit.dim, i, circuit.shape))
        measured_now: Set[int] = set()
        for j, o in enumerate(ts.ops):
            if o.condition is not None:
                if circuit.model == NANTC:
                    found.append(Violation(i, j, "adaptive", "NANTC circuits cannot be classically conditioned"))
                future = o.condition.ids - measured_before
                if future:
                    found.append(Violation(i, j, "causality", f"condition on measurements {sorted(future)} not yet taken"))
            if o.measurement_id is not None:
                if o.measurement_id in measured_before or o.measurement_id in measured_now:
                    found.append(Violation(i, j, "duplicate-measurement", f"measurement id {o.measurement_id} reused"))
                measured_now.add(o.measurement_id)
        measured_before |= measured_now
    return found


# Logical-to-physical expansion
#
# Multi-qubit logical operations are star-shaped around their hub. The
# controlled gates are decomposed recursively into single-controlled gates
# and the decomposition is routed through the hub with SWAPs, so every
# physical gate touches the hub and runs in its own timestep.

Layers = Tuple[Tuple[BasicOp, ...], ...]


def principal_sqrt(u: np.ndarray) -> np.ndarray:
    """Principal square root of a unitary via its complex Schur form."""
    t, z = linalg.schur(u, output="complex")
    return z @ np.diag(np.sqrt(np.diag(t))) @ z.conj().T


def _controlled_sequence(controls: Tuple[int, ...], target: int, u: Optional[np.ndarray]) -> List[Tuple[int, int, Optional[np.ndarray]]]:
    """
    Gray-code walk over the non-empty subsets of the controls.

    The highest control of the current subset holds the subset's parity and
    drives V = U^(1/2^(k-1)) on the target, inverted for even subsets. The
    exponents add up to 2^(k-1) exactly when every control is 1. Entries are
    (control, target, matrix) with matrix None for a CNOT.
    """
    k = len(controls)
    if k == 1:
        return [(controls[0], target, u)]
    v = GATE_MATRICES["X"] if u is None else u
    for _ in range(k - 1):
        v = principal_sqrt(v)
    vd = v.conj().T

    sequence = [(controls[0], target, v)]
    for i in range(2, 2**k):
        gray, before = i ^ (i >> 1), (i - 1) ^ ((i - 1) >> 1)
        top = gray.bit_length() - 1
        flipped = (gray ^ before).bit_length() - 1
        # a new top bit takes over the parity held by the previous top
        source = top - 1 if flipped == top else flipped
        sequence.append((controls[source], controls[top], None))
        sequence.append((controls[top], target, v if bin(gray).count("1") % 2 else vd))
    return sequence


def _route_through_hub(qubits: Tuple[Address, ...], hub_value: int, sequence) -> List[BasicOp]:
    hub = qubits[hub_value]
    where = {v: q for v, q in enumerate(qubits)}
    at = {q: v for v, q in enumerate(qubits)}
    emitted: List[BasicOp] = []

    def swap_with_hub(q: Address) -> None:
        emitted.append(op(SWAP, hub, q))
        a, b = at[hub], at[q]
        at[hub], at[q] = b, a
        where[a], where[b] = q, hub

    for c, t, u in sequence:
        if hub not in (where[c], where[t]):
            swap_with_hub(where[c])
        pair = (where[c], where[t])
        if u is None:
            emitted.append(op(CNOT, *pair))
        else:
            emitted.append(BasicOp(gate=GateSpec.cu(u), qubits=pair))

    while True:
        v = at[hub]
        if v != hub_value:
            swap_with_hub(qubits[v])
            continue
        misplaced = next((q for q in qubits if at[q] != qubits.index(q)), None)
        if misplaced is None:
            break
        swap_with_hub(misplaced)
    return emitted


@lru_cache(maxsize=4096)
def expand_op(operation: BasicOp) -> Layers:
    """The physical layers that implement one logical operation."""
    gate = operation.gate
    qubits = operation.qubits
    if gate.name in (MCX, CU) and gate.controls >= 2:
        u = None if gate.name == MCX else as_matrix(gate.matrix)
        controls = tuple(range(gate.controls))
        sequence = _controlled_sequence(controls, gate.controls, u)
        return tuple((o,) for o in _route_through_hub(qubits, gate.controls, sequence))
    if gate.name == MCX:
        return ((op(CNOT, *qubits),),)
    if gate.name == FANOUT:
        source = qubits[0]
        return tuple((op(CNOT, source, t),) for t in qubits[1:])
    return ((operation,),)


def timestep_layers(ts: Timestep) -> List[List[BasicOp]]:
    if ts.kind == PHYSICAL:
        return [list(ts.ops)]
    layers: List[List[BasicOp]] = [[]]
    for o in ts.ops:
        expanded = expand_op(o)
        while len(layers) < len(expanded):
            layers.append([])
        for i, layer in enumerate(expanded):
            layers[i].extend(layer)
    return layers


def expand(circuit: AdaptiveCircuit) -> AdaptiveCircuit:
    """Equivalent circuit made of physical timesteps only."""
    timesteps = [
        Timestep(ops=tuple(layer), kind=PHYSICAL)
        for ts in circuit.timesteps
        for layer in timestep_layers(ts)
    ]
    return circuit.with_timesteps(timesteps)


# Metrics


@dataclass(frozen=True)
class CostReport:
    depth: int
    size: int
    width: int
    model: str
    logical_depth: int = 0


def depth(circuit: AdaptiveCircuit) -> int:
    """Physical timesteps after expansion; an idle timestep still counts."""
    return sum(len(timestep_layers(ts)) for ts in circuit.timesteps)


def size(circuit: AdaptiveCircuit) -> int:
    return sum(
        sum(len(layer) for layer in expand_op(o)) if ts.kind == LOGICAL else 1
        for ts in circuit.timesteps
        for o in ts.ops
    )


def width(circuit: AdaptiveCircuit) -> int:
    """
    Qubit count for NANTC and CCAC; for CCNTC the volume of the smallest
    axis-aligned hypercube holding every touched point.
    """
    touched = circuit.qubits()
    if not touched:
        return 0
    if circuit.model != CCNTC:
        return len(touched)
    side = max(max(c) - min(c) + 1 for c in zip(*touched))
    return side ** circuit.dim


def cost_report(circuit: AdaptiveCircuit) -> CostReport:
    report = CostReport(
        depth=depth(circuit),
        size=size(circuit),
        width=width(circuit),
        model=circuit.model,
        logical_depth=len(circuit.timesteps),
    )
    logger.debug("cost report %s", report)
    return report
