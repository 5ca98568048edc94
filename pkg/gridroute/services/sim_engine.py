"""
Simulation engine

Verification simulators and the adaptive execution loop:

    BooleanDevice      computational-basis permutations (+ one tracked target vector)
    StabilizerDevice   Aaronson-Gottesman tableau for Clifford circuits
    DenseDevice        state vectors with exact measurement semantics

Each device applies one timestep at a time and keeps the measurement
record, so the same objects serve `run_*` and `execute_adaptive`.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Protocol, Sequence, Tuple, Union

import numpy as np
from django.conf import settings
from scipy import linalg

from .circuit_ir import (
    CNOT,
    CU,
    FANOUT,
    GATE_MATRICES,
    LOGICAL,
    MCX,
    MEASURE,
    PAULI,
    SWAP,
    Address,
    AdaptiveCircuit,
    BasicOp,
    GateSpec,
    Timestep,
    Violation,
    as_matrix,
    expand,
    expand_op,
    op,
    timestep_violations,
)
from .pauli_frame import bell_label, compose, sigma_of

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-10
DensityMatrix = np.ndarray


class SimulationError(Exception):
    """Raised when a simulator cannot execute a circuit."""

    pass


class AdaptiveExecutionError(Exception):
    """Raised when a controller proposes an invalid timestep."""

    def __init__(self, message: str, violations: Sequence[Violation] = ()):
        super().__init__(message)
        self.violations = list(violations)


def dense_qubit_limit() -> int:
    return int(getattr(settings, "GRIDROUTE_DENSE_QUBIT_LIMIT", 24))


# Outcome sources


class OutcomeSource(Protocol):
    def choose(self, measurement_id: int, p_one: float) -> int: ...


class RandomOutcomes:
    """Seeded outcomes drawn with the Born probabilities."""

    def __init__(self, seed: Optional[int] = None):
        self.rng = np.random.default_rng(seed)

    def choose(self, measurement_id: int, p_one: float) -> int:
        if p_one < NORM_TOLERANCE:
            return 0
        if p_one > 1.0 - NORM_TOLERANCE:
            return 1
        return int(self.rng.random() < p_one)


class ScriptedOutcomes:
    """
    Outcomes fixed in advance, by measurement id or in measurement order.

    Scripted outcomes with zero probability are rejected; unscripted
    measurements fall back to `default`.
    """

    def __init__(self, outcomes: Union[Mapping[int, int], Sequence[int]], default: int = 0):
        self.by_id = dict(outcomes) if isinstance(outcomes, Mapping) else None
        self.queue = None if isinstance(outcomes, Mapping) else list(outcomes)
        self.default = default

    def choose(self, measurement_id: int, p_one: float) -> int:
        if self.by_id is not None:
            outcome = self.by_id.get(measurement_id, self.default)
        else:
            outcome = self.queue.pop(0) if self.queue else self.default
        p = p_one if outcome else 1.0 - p_one
        if p < NORM_TOLERANCE:
            if self.by_id is None or measurement_id in self.by_id:
                raise SimulationError(f"scripted outcome {outcome} for measurement {measurement_id} has probability 0")
            outcome = 1 - outcome
        return outcome


def _source(outcome_source: Optional[OutcomeSource]) -> OutcomeSource:
    if outcome_source is not None:
        return outcome_source
    return RandomOutcomes(getattr(settings, "GRIDROUTE_DEFAULT_SEED", 0))


class Device:
    """Common timestep loop; subclasses implement `apply`."""

    def __init__(self, outcome_source: Optional[OutcomeSource] = None):
        self.source = _source(outcome_source)
        self.record: Dict[int, int] = {}

    def apply(self, operation: BasicOp) -> None:
        raise NotImplementedError

    def apply_timestep(self, ts: Timestep) -> Dict[int, int]:
        before = set(self.record)
        for o in ts.ops:
            self.apply(o)
        return {k: v for k, v in self.record.items() if k not in before}

    def run(self, circuit: AdaptiveCircuit) -> Dict[int, int]:
        for ts in circuit.timesteps:
            self.apply_timestep(ts)
        return self.record


# Boolean simulation


@dataclass
class BooleanState:
    bits: Dict[Address, int] = field(default_factory=dict)
    target: Optional[Address] = None
    target_vector: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.target_vector is not None:
            self.target_vector = np.asarray(self.target_vector, dtype=complex)
            if abs(np.linalg.norm(self.target_vector) - 1.0) > 1e-12:
                raise SimulationError("target vector is not normalized")
            if self.target is None:
                raise SimulationError("a target vector needs a designated target qubit")

    def copy(self) -> "BooleanState":
        vector = None if self.target_vector is None else self.target_vector.copy()
        return BooleanState(bits=dict(self.bits), target=self.target, target_vector=vector)


def _x_like(matrix: np.ndarray) -> Optional[bool]:
    """True for X, False for I, None for anything else."""
    if np.allclose(matrix, GATE_MATRICES["X"], atol=1e-12):
        return True
    if np.allclose(matrix, np.eye(2), atol=1e-12):
        return False
    return None


class BooleanDevice(Device):
    """Tracks classical bits; the designated target may hold a 2-amplitude vector."""

    def __init__(self, state: BooleanState, outcome_source: Optional[OutcomeSource] = None):
        super().__init__(outcome_source)
        self.state = state

    def _bit(self, q: Address) -> int:
        if q == self.state.target and self.state.target_vector is not None:
            raise SimulationError(f"target {q} holds a vector and cannot act as a bit")
        return self.state.bits.get(q, 0)

    def _flip(self, q: Address) -> None:
        if q == self.state.target and self.state.target_vector is not None:
            self.state.target_vector = GATE_MATRICES["X"] @ self.state.target_vector
        else:
            self.state.bits[q] = self.state.bits.get(q, 0) ^ 1

    def apply(self, o: BasicOp) -> None:
        name = o.gate.name
        q = o.qubits
        if name == "I":
            return
        if name == "X":
            self._flip(q[0])
        elif name in (CNOT, MCX):
            if all(self._bit(c) for c in q[:-1]):
                self._flip(q[-1])
        elif name == FANOUT:
            if self._bit(q[0]):
                for t in q[1:]:
                    self._flip(t)
        elif name == SWAP:
            a, b = q
            self.state.bits[a], self.state.bits[b] = self._bit(b), self._bit(a)
        elif name == CU:
            u = as_matrix(o.gate.matrix)
            fire = all(self._bit(c) for c in q[:-1])
            t = q[-1]
            if t == self.state.target and self.state.target_vector is not None:
                if fire:
                    self.state.target_vector = u @ self.state.target_vector
                return
            x = _x_like(u)
            if x is None:
                raise SimulationError(f"controlled non-permutation gate on non-target qubit {t}")
            if fire and x:
                self._flip(t)
        elif name == MEASURE:
            self.record[o.measurement_id] = self._bit(q[0])
        elif name == PAULI:
            x, _ = o.condition.evaluate(self.record)
            if x:
                self._flip(q[0])
        elif q[0] == self.state.target and self.state.target_vector is not None:
            self.state.target_vector = o.gate.unitary() @ self.state.target_vector
        elif name == "Z":
            return
        else:
            raise SimulationError(f"gate {name} is not a basis permutation (on {q[0]})")


def run_boolean(circuit: AdaptiveCircuit, initial: BooleanState) -> BooleanState:
    """
    Run a permutation circuit on classical bits.

    Raises:
        SimulationError: On a non-permutation gate away from the target.
    """
    device = BooleanDevice(initial.copy())
    device.run(circuit)
    return device.state


@dataclass
class BooleanBatch:
    """Many classical assignments at once: one row per assignment."""

    bits: np.ndarray
    index: Dict[Address, int]

    def column(self, q: Address) -> np.ndarray:
        return self.bits[:, self.index[q]]

    def columns(self, qubits: Sequence[Address]) -> np.ndarray:
        return self.bits[:, [self.index[q] for q in qubits]]


def run_boolean_batch(circuit: AdaptiveCircuit, columns: Sequence[Address], values: np.ndarray) -> BooleanBatch:
    """
    Run a permutation circuit on a batch of assignments.

    Args:
        circuit: Circuit built from basis-permutation gates.
        columns: Qubits whose initial values are given; all others start at 0.
        values: Boolean array of shape (batch, len(columns)).

    Returns:
        BooleanBatch covering every qubit the circuit or `columns` mention.
    """
    values = np.asarray(values, dtype=bool)
    addresses = list(dict.fromkeys(list(columns) + sorted(circuit.qubits(), key=str)))
    index = {q: i for i, q in enumerate(addresses)}
    bits = np.zeros((values.shape[0], len(addresses)), dtype=bool)
    if len(columns):
        bits[:, [index[q] for q in columns]] = values
    record: Dict[int, np.ndarray] = {}

    for ts in circuit.timesteps:
        for o in ts.ops:
            name = o.gate.name
            q = [index[a] for a in o.qubits]
            if name == "X":
                bits[:, q[0]] ^= True
            elif name in (CNOT, MCX) or (name == CU and _x_like(as_matrix(o.gate.matrix))):
                bits[:, q[-1]] ^= bits[:, q[:-1]].all(axis=1)
            elif name == FANOUT:
                bits[:, q[1:]] ^= bits[:, [q[0]]]
            elif name == SWAP:
                bits[:, [q[0], q[1]]] = bits[:, [q[1], q[0]]]
            elif name == MEASURE:
                record[o.measurement_id] = bits[:, q[0]].copy()
            elif name == PAULI:
                fire = np.zeros(bits.shape[0], dtype=bool)
                for mid in o.condition.x_parity_of:
                    fire ^= record[mid]
                bits[:, q[0]] ^= fire
            elif name in ("I", "Z") or (name == CU and _x_like(as_matrix(o.gate.matrix)) is False):
                continue
            else:
                raise SimulationError(f"gate {name} is not a basis permutation")
    return BooleanBatch(bits=bits, index=index)


# Stabilizer simulation


def _g(x1: np.ndarray, z1: np.ndarray, x2: np.ndarray, z2: np.ndarray) -> np.ndarray:
    x1, z1, x2, z2 = (a.astype(int) for a in (x1, z1, x2, z2))
    return np.where(
        (x1 == 1) & (z1 == 1),
        z2 - x2,
        np.where((x1 == 1) & (z1 == 0), z2 * (2 * x2 - 1), np.where((x1 == 0) & (z1 == 1), x2 * (1 - 2 * z2), 0)),
    )


class StabilizerState:
    """
    Tableau with n destabilizer rows, n stabilizer rows and one scratch row.

    Starts in |0...0>; `index` maps addresses to tableau columns.
    """

    def __init__(self, addresses: Iterable[Address]):
        self.index: Dict[Address, int] = {q: i for i, q in enumerate(addresses)}
        n = self.n = len(self.index)
        self.x = np.zeros((2 * n + 1, n), dtype=bool)
        self.z = np.zeros((2 * n + 1, n), dtype=bool)
        self.r = np.zeros(2 * n + 1, dtype=bool)
        for i in range(n):
            self.x[i, i] = True
            self.z[n + i, i] = True

    def copy(self) -> "StabilizerState":
        other = StabilizerState([])
        other.index, other.n = dict(self.index), self.n
        other.x, other.z, other.r = self.x.copy(), self.z.copy(), self.r.copy()
        return other

    def _col(self, q: Address) -> int:
        try:
            return self.index[q]
        except KeyError as e:
            raise SimulationError(f"qubit {q} is not part of the tableau") from e

    def h(self, q: Address) -> None:
        a = self._col(q)
        self.r ^= self.x[:, a] & self.z[:, a]
        self.x[:, a], self.z[:, a] = self.z[:, a].copy(), self.x[:, a].copy()

    def s(self, q: Address) -> None:
        a = self._col(q)
        self.r ^= self.x[:, a] & self.z[:, a]
        self.z[:, a] ^= self.x[:, a]

    def pauli(self, q: Address, x: int, z: int) -> None:
        a = self._col(q)
        if x:
            self.r ^= self.z[:, a]
        if z:
            self.r ^= self.x[:, a]

    def cnot(self, control: Address, target: Address) -> None:
        a, b = self._col(control), self._col(target)
        self.r ^= self.x[:, a] & self.z[:, b] & ~(self.x[:, b] ^ self.z[:, a])
        self.x[:, b] ^= self.x[:, a]
        self.z[:, a] ^= self.z[:, b]

    def swap(self, p: Address, q: Address) -> None:
        a, b = self._col(p), self._col(q)
        self.x[:, [a, b]] = self.x[:, [b, a]]
        self.z[:, [a, b]] = self.z[:, [b, a]]

    def _rowsum(self, h: int, i: int) -> None:
        total = 2 * int(self.r[h]) + 2 * int(self.r[i]) + int(_g(self.x[i], self.z[i], self.x[h], self.z[h]).sum())
        self.r[h] = total % 4 == 2
        self.x[h] ^= self.x[i]
        self.z[h] ^= self.z[i]

    def measure(self, q: Address, source: OutcomeSource, measurement_id: int = -1) -> int:
        a = self._col(q)
        n = self.n
        random_rows = np.nonzero(self.x[n : 2 * n, a])[0]
        if random_rows.size:
            p = n + int(random_rows[0])
            outcome = source.choose(measurement_id, 0.5)
            for i in range(2 * n):
                if i != p and self.x[i, a]:
                    self._rowsum(i, p)
            self.x[p - n], self.z[p - n], self.r[p - n] = self.x[p], self.z[p], self.r[p]
            self.x[p] = False
            self.z[p] = False
            self.z[p, a] = True
            self.r[p] = bool(outcome)
            return outcome
        outcome = self.peek(q)
        source.choose(measurement_id, float(outcome))
        return outcome

    def peek(self, q: Address) -> Optional[int]:
        """Z outcome of q if it is deterministic, else None; the state is unchanged."""
        a = self._col(q)
        n = self.n
        if self.x[n : 2 * n, a].any():
            return None
        scratch = 2 * n
        self.x[scratch] = False
        self.z[scratch] = False
        self.r[scratch] = False
        for i in range(n):
            if self.x[i, a]:
                self._rowsum(scratch, i + n)
        return int(self.r[scratch])

    def stabilizers(self) -> List[str]:
        """Stabilizer generators as signed strings over I/X/Y/Z in column order."""
        letters = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
        rows = []
        for i in range(self.n, 2 * self.n):
            body = "".join(letters[(int(x), int(z))] for x, z in zip(self.x[i], self.z[i]))
            rows.append(("-" if self.r[i] else "+") + body)
        return rows


class StabilizerDevice(Device):
    def __init__(self, state: StabilizerState, outcome_source: Optional[OutcomeSource] = None):
        super().__init__(outcome_source)
        self.state = state

    def apply(self, o: BasicOp) -> None:
        name = o.gate.name
        q = o.qubits
        st = self.state
        if name in (MCX, CU, FANOUT) and len(q) > 2:
            for layer in expand_op(o):
                for sub in layer:
                    self.apply(sub)
            return
        if name == "I":
            return
        if name == "H":
            st.h(q[0])
        elif name == "S":
            st.s(q[0])
        elif name == "SDG":
            for _ in range(3):
                st.s(q[0])
        elif name in ("X", "Y", "Z"):
            st.pauli(q[0], int(name in "XY"), int(name in "YZ"))
        elif name in (CNOT, MCX, FANOUT):
            st.cnot(q[0], q[1])
        elif name == SWAP:
            st.swap(*q)
        elif name == CU:
            self._controlled_pauli(o)
        elif name == MEASURE:
            self.record[o.measurement_id] = st.measure(q[0], self.source, o.measurement_id)
        elif name == PAULI:
            x, z = o.condition.evaluate(self.record)
            st.pauli(q[0], x, z)
        else:
            raise SimulationError(f"gate {name} is not Clifford")

    def _controlled_pauli(self, o: BasicOp) -> None:
        u = as_matrix(o.gate.matrix)
        c, t = o.qubits
        name = next((p for p in ("I", "X", "Z", "Y") if np.allclose(u, GATE_MATRICES[p], atol=1e-12)), None)
        if name is None:
            raise SimulationError("controlled-U is not Clifford for this payload")
        if name == "X":
            self.state.cnot(c, t)
        elif name == "Z":
            self.state.h(t)
            self.state.cnot(c, t)
            self.state.h(t)
        elif name == "Y":
            for _ in range(3):
                self.state.s(t)
            self.state.cnot(c, t)
            self.state.s(t)


def run_stabilizer(
    circuit: AdaptiveCircuit,
    initial: Optional[StabilizerState] = None,
    outcome_source: Optional[OutcomeSource] = None,
) -> Tuple[StabilizerState, Dict[int, int]]:
    """
    Run a Clifford circuit with measurements and conditional Paulis.

    Returns:
        Final tableau and the measurement record.

    Raises:
        SimulationError: On a non-Clifford gate.
    """
    state = initial.copy() if initial is not None else StabilizerState(sorted(circuit.qubits(), key=str))
    device = StabilizerDevice(state, outcome_source)
    device.run(circuit)
    return device.state, device.record


# Dense simulation


class DenseState:
    """
    State vector stored as an n-axis tensor; axis i belongs to `addresses[i]`
    and axis 0 is the most significant bit of the flat vector.
    """

    def __init__(self, addresses: Sequence[Address], vector: Optional[np.ndarray] = None):
        self.addresses = list(addresses)
        self.index = {q: i for i, q in enumerate(self.addresses)}
        n = len(self.addresses)
        if vector is None:
            vector = np.zeros(2**n, dtype=complex)
            vector[0] = 1.0
        vector = np.asarray(vector, dtype=complex)
        if vector.size != 2**n:
            raise SimulationError(f"state of size {vector.size} does not match {n} qubits")
        if abs(np.linalg.norm(vector) - 1.0) > NORM_TOLERANCE:
            raise SimulationError("input state is not normalized")
        self.tensor = vector.reshape((2,) * n) if n else vector.reshape(())

    @property
    def n(self) -> int:
        return len(self.addresses)

    def vector(self) -> np.ndarray:
        return self.tensor.reshape(-1)

    def copy(self) -> "DenseState":
        return DenseState(self.addresses, self.vector().copy())

    def axis(self, q: Address) -> int:
        try:
            return self.index[q]
        except KeyError as e:
            raise SimulationError(f"qubit {q} is not part of the state") from e

    def apply_matrix(self, matrix: np.ndarray, q: Address) -> None:
        a = self.axis(q)
        self.tensor = np.moveaxis(np.tensordot(matrix, self.tensor, axes=([1], [a])), 0, a)

    def apply_controlled(self, matrix: np.ndarray, controls: Sequence[Address], target: Address) -> None:
        axes = [self.axis(c) for c in controls]
        t = self.axis(target)
        idx = [slice(None)] * self.n
        for a in axes:
            idx[a] = 1
        idx = tuple(idx)
        sub = self.tensor[idx]
        t_sub = t - sum(1 for a in axes if a < t)
        updated = np.moveaxis(np.tensordot(matrix, sub, axes=([1], [t_sub])), 0, t_sub)
        tensor = self.tensor.copy()
        tensor[idx] = updated
        self.tensor = tensor

    def swap(self, p: Address, q: Address) -> None:
        self.tensor = np.ascontiguousarray(np.swapaxes(self.tensor, self.axis(p), self.axis(q)))

    def probability_one(self, q: Address) -> float:
        a = self.axis(q)
        return float(np.sum(np.abs(np.take(self.tensor, 1, axis=a)) ** 2))

    def collapse(self, q: Address, outcome: int) -> None:
        a = self.axis(q)
        tensor = self.tensor.copy()
        idx = [slice(None)] * self.n
        idx[a] = 1 - outcome
        tensor[tuple(idx)] = 0
        norm = np.linalg.norm(tensor)
        if norm < NORM_TOLERANCE:
            raise SimulationError(f"outcome {outcome} on {q} has probability 0")
        self.tensor = tensor / norm

    def reduced(self, keep: Sequence[Address]) -> np.ndarray:
        """Vector over `keep` given that every other qubit is |0>; raises if it is not."""
        axes = [self.axis(q) for q in keep]
        idx = tuple(slice(None) if a in axes else 0 for a in range(self.n))
        sub = self.tensor[idx]
        order = sorted(axes)
        sub = np.transpose(sub, [order.index(a) for a in axes])
        vector = sub.reshape(-1)
        if abs(np.linalg.norm(vector) - 1.0) > 1e-9:
            raise SimulationError(f"qubits outside {list(keep)} are not all |0>")
        return vector


class DenseDevice(Device):
    def __init__(self, state: DenseState, outcome_source: Optional[OutcomeSource] = None):
        super().__init__(outcome_source)
        self.state = state

    def apply(self, o: BasicOp) -> None:
        name = o.gate.name
        q = o.qubits
        st = self.state
        if name in (CNOT, MCX):
            st.apply_controlled(GATE_MATRICES["X"], q[:-1], q[-1])
        elif name == CU:
            st.apply_controlled(as_matrix(o.gate.matrix), q[:-1], q[-1])
        elif name == FANOUT:
            for t in q[1:]:
                st.apply_controlled(GATE_MATRICES["X"], q[:1], t)
        elif name == SWAP:
            st.swap(*q)
        elif name == MEASURE:
            outcome = self.source.choose(o.measurement_id, st.probability_one(q[0]))
            st.collapse(q[0], outcome)
            self.record[o.measurement_id] = outcome
        elif name == PAULI:
            x, z = o.condition.evaluate(self.record)
            if z:
                st.apply_matrix(GATE_MATRICES["Z"], q[0])
            if x:
                st.apply_matrix(GATE_MATRICES["X"], q[0])
        else:
            st.apply_matrix(o.gate.unitary(), q[0])


def run_dense(
    circuit: AdaptiveCircuit,
    initial: Optional[DenseState] = None,
    outcome_source: Optional[OutcomeSource] = None,
) -> Tuple[DenseState, Dict[int, int]]:
    """
    Exact state-vector run.

    Raises:
        SimulationError: If the state exceeds the dense qubit limit, the input
            is not normalized, or the circuit touches qubits outside the state.
    """
    if initial is None:
        initial = DenseState(sorted(circuit.qubits(), key=str))
    limit = dense_qubit_limit()
    if initial.n > limit:
        raise SimulationError(f"{initial.n} qubits exceed the dense limit of {limit}")
    device = DenseDevice(initial.copy(), outcome_source)
    device.run(circuit)
    return device.state, device.record


def circuit_unitary(circuit: AdaptiveCircuit, addresses: Sequence[Address]) -> np.ndarray:
    """Unitary of a measurement-free circuit, columns in `addresses` order."""
    dim = 2 ** len(addresses)
    columns = []
    for k in range(dim):
        basis = np.zeros(dim, dtype=complex)
        basis[k] = 1.0
        state, _ = run_dense(circuit, DenseState(addresses, basis))
        columns.append(state.vector())
    return np.stack(columns, axis=1)


# Density matrices


def density_matrix(vector: np.ndarray) -> DensityMatrix:
    v = np.asarray(vector, dtype=complex).reshape(-1, 1)
    return v @ v.conj().T


def check_density_matrix(rho: DensityMatrix, tolerance: float = 1e-9) -> None:
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise SimulationError("density matrix must be square")
    if not np.allclose(rho, rho.conj().T, atol=tolerance):
        raise SimulationError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > tolerance:
        raise SimulationError("density matrix does not have unit trace")
    if np.min(np.linalg.eigvalsh(rho)) < -tolerance:
        raise SimulationError("density matrix is not positive semidefinite")


def trace_distance(a: DensityMatrix, b: DensityMatrix) -> float:
    """Half the sum of singular values of a - b."""
    if a.shape != b.shape:
        raise SimulationError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(0.5 * np.sum(linalg.svdvals(a - b)))


def partial_trace_to(state: DensityMatrix, keep: int) -> DensityMatrix:
    """Reduced 2x2 density matrix of qubit `keep` (0 is the most significant)."""
    n = int(round(np.log2(state.shape[0])))
    if 2**n != state.shape[0]:
        raise SimulationError("density matrix size is not a power of two")
    if not 0 <= keep < n:
        raise SimulationError(f"qubit {keep} out of range for {n} qubits")
    t = state.reshape((2,) * (2 * n))
    t = np.moveaxis(t, [keep, n + keep], [0, 1])
    rest = 2 ** (n - 1)
    return np.trace(t.reshape(2, 2, rest, rest), axis1=2, axis2=3)


# Adaptive execution


class Halt:
    """The controller's stop symbol."""

    def __repr__(self):
        return "HALT"


HALT = Halt()


class Controller(Protocol):
    def next_timestep(self, history: Sequence[Mapping[int, int]]) -> Union[Timestep, Halt]: ...


@dataclass
class Transcript:
    timesteps: List[Timestep] = field(default_factory=list)
    outcomes: List[Dict[int, int]] = field(default_factory=list)

    @property
    def depth(self) -> int:
        return len(self.timesteps)

    @property
    def record(self) -> Dict[int, int]:
        merged: Dict[int, int] = {}
        for step in self.outcomes:
            merged.update(step)
        return merged


class ReplayController:
    """Replays a compiled circuit one physical timestep at a time."""

    def __init__(self, circuit: AdaptiveCircuit):
        self._steps = list(expand(circuit).timesteps)

    def next_timestep(self, history: Sequence[Mapping[int, int]]) -> Union[Timestep, Halt]:
        if len(history) < len(self._steps):
            return self._steps[len(history)]
        return HALT


class TeleportController:
    """
    Moves a state along a line by teleportation, choosing the final Pauli
    correction from the outcomes it has seen instead of emitting a
    conditioned gate.

    The line must have an even number of hops.
    """

    def __init__(self, line: Sequence[Address], first_measurement_id: int = 0):
        if len(line) < 3 or (len(line) - 1) % 2:
            raise AdaptiveExecutionError("teleport controller needs an even number of hops")
        self.line = list(line)
        self.pairs = [(self.line[i], self.line[i + 1]) for i in range(1, len(line) - 1, 2)]
        self.measured = [(self.line[i], self.line[i + 1]) for i in range(0, len(line) - 1, 2)]
        base = first_measurement_id
        self.ids = [(base + 2 * k, base + 2 * k + 1) for k in range(len(self.measured))]

    def next_timestep(self, history: Sequence[Mapping[int, int]]) -> Union[Timestep, Halt]:
        step = len(history)
        if step == 0:
            return Timestep(ops=tuple(op("H", a) for a, _ in self.pairs))
        if step == 1:
            return Timestep(ops=tuple(op(CNOT, a, b) for a, b in self.pairs))
        if step == 2:
            return Timestep(ops=tuple(op(CNOT, a, b) for a, b in self.measured))
        if step == 3:
            return Timestep(ops=tuple(op("H", a) for a, _ in self.measured))
        if step == 4:
            ops = []
            for (a, b), (pid, fid) in zip(self.measured, self.ids):
                ops.append(BasicOp(gate=GateSpec.named(MEASURE), qubits=(a,), measurement_id=pid))
                ops.append(BasicOp(gate=GateSpec.named(MEASURE), qubits=(b,), measurement_id=fid))
            return Timestep(ops=tuple(ops))
        if step == 5:
            record: Dict[int, int] = {}
            for outcomes in history:
                record.update(outcomes)
            correction = compose([sigma_of(bell_label(record[p], record[f])) for p, f in self.ids])
            # XZ and Y differ by a global phase
            name = {(0, 0): None, (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}[(correction.x_bit, correction.z_bit)]
            return Timestep(ops=(op(name, self.line[-1]),) if name else ())
        return HALT


def execute_adaptive(
    controller: Controller,
    device: Device,
    *,
    model: Optional[str] = None,
    dim: int = 2,
    max_steps: int = 100_000,
) -> Transcript:
    """
    Run the controller/device loop until the controller halts.

    Each proposed timestep is checked against `model` (when given) before the
    device applies it; the outcomes of every step are fed back to the
    controller.

    Raises:
        AdaptiveExecutionError: If a proposal violates the model or the
            controller never halts within `max_steps`.
    """
    transcript = Transcript()
    while True:
        proposal = controller.next_timestep(transcript.outcomes)
        if isinstance(proposal, Halt):
            break
        if model is not None:
            violations = timestep_violations(proposal, model, dim, len(transcript.timesteps))
            if proposal.kind == LOGICAL:
                violations.append(Violation(len(transcript.timesteps), None, "logical", "devices run physical timesteps"))
            if violations:
                raise AdaptiveExecutionError(
                    f"controller proposed an invalid timestep: {violations[0]}", violations
                )
        transcript.timesteps.append(proposal)
        transcript.outcomes.append(device.apply_timestep(proposal))
        if len(transcript.timesteps) > max_steps:
            raise AdaptiveExecutionError(f"controller did not halt within {max_steps} timesteps")
    logger.debug("adaptive run finished after %d timesteps", transcript.depth)
    return transcript
