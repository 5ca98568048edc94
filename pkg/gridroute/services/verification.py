"""
Verification

Checks a generated circuit against the contract of the generator that built
it. The generator is read from meta["kind"]:

    control   target ^= AND(controls) (or U on the target), everything else restored
    fanout    every control ^= source, source and ancillas restored
    reorder   data qubit j ends at (pi(j), 0) in the same state
    interact  same output state as the items run directly on n qubits
    ccac      same output state as the source CCAC circuit

Every report also lists the locality violations found by `validate`.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from django.conf import settings

from .circuit_ir import CU, MCX, AdaptiveCircuit, CircuitError, GateSpec, as_matrix, validate
from .sim_engine import (
    BooleanState,
    DenseState,
    RandomOutcomes,
    ScriptedOutcomes,
    SimulationError,
    StabilizerState,
    run_boolean,
    run_boolean_batch,
    run_dense,
    run_stabilizer,
)
from .teleport_route import item_from_record, rounds_circuit

logger = logging.getLogger(__name__)

BOOLEAN, STABILIZER, DENSE = "boolean", "stabilizer", "dense"
SIMULATORS = (BOOLEAN, STABILIZER, DENSE)

DEFAULT_SIMULATOR = {
    "control": BOOLEAN,
    "fanout": BOOLEAN,
    "reorder": STABILIZER,
    "interact": DENSE,
    "ccac": DENSE,
}

DEFAULT_SHOTS = 64
# Failures listed in a report; the count is always complete.
MAX_LISTED_FAILURES = 10
FIDELITY_TOLERANCE = 1e-9


class VerificationError(Exception):
    """Raised when a circuit carries no contract that can be checked."""

    pass


@dataclass
class VerificationReport:
    kind: str
    simulator: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)
    failure_count: int = 0
    violations: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.checked > 0 and not self.failure_count and not self.violations

    def fail(self, message: str) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_LISTED_FAILURES:
            self.failures.append(message)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "simulator": self.simulator,
            "passed": self.passed,
            "checked": self.checked,
            "failure_count": self.failure_count,
            "failures": list(self.failures),
            "violations": list(self.violations),
        }

    def to_text(self) -> str:
        status = "PASSED" if self.passed else "FAILED"
        lines = [f"{status}: {self.kind} circuit, {self.simulator} simulator, {self.checked} checks"]
        lines += [f"  violation: {v}" for v in self.violations]
        lines += [f"  failure: {f}" for f in self.failures]
        if self.failure_count > len(self.failures):
            lines.append(f"  ... {self.failure_count - len(self.failures)} more failures")
        return "\n".join(lines)


def exhaustive_limit() -> int:
    return int(getattr(settings, "GRIDROUTE_EXHAUSTIVE_LIMIT", 16))


def _assignments(width: int, controls: int, shots: int, rng: np.random.Generator) -> np.ndarray:
    """Every assignment of `width` bits up to the exhaustive control limit, otherwise random rows plus all-ones."""
    if controls <= exhaustive_limit():
        return ((np.arange(2**width)[:, None] >> np.arange(width)) & 1).astype(bool)
    rows = rng.integers(0, 2, size=(shots, width)).astype(bool)
    return np.vstack([rows, np.ones((1, width), dtype=bool)])


def _bits(row: np.ndarray) -> str:
    return "".join("1" if b else "0" for b in row)


def _random_state(k: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=2**k) + 1j * rng.normal(size=2**k)
    return v / np.linalg.norm(v)


def _same_up_to_phase(a: np.ndarray, b: np.ndarray) -> bool:
    return abs(abs(np.vdot(a, b)) - 1.0) < FIDELITY_TOLERANCE


def _other_qubits(circuit: AdaptiveCircuit) -> List:
    inputs = set(circuit.inputs)
    return sorted((q for q in circuit.qubits() if q not in inputs), key=str)


# Controlled-U and fanout


def _payload(circuit: AdaptiveCircuit) -> GateSpec:
    record = circuit.meta.get("gate")
    return GateSpec.from_record(record) if record else GateSpec.named("X")


def _is_x(gate: GateSpec) -> bool:
    if gate.name in ("X", MCX):
        return True
    return gate.name == CU and np.allclose(as_matrix(gate.matrix), [[0, 1], [1, 0]], atol=1e-12)


def _check_restored(report: VerificationReport, batch, qubits: Sequence, expected: np.ndarray, rows: np.ndarray, what: str) -> None:
    got = batch.columns(qubits)
    bad = np.nonzero((got != expected).any(axis=1))[0]
    for i in bad:
        report.fail(f"{what} wrong for input {_bits(rows[i])}")


def _verify_control_boolean(circuit: AdaptiveCircuit, report: VerificationReport, shots: int, rng) -> None:
    controls, target = list(circuit.inputs[:-1]), circuit.inputs[-1]
    ancillas = _other_qubits(circuit)
    gate = _payload(circuit)

    if not _is_x(gate):
        _verify_control_vector(circuit, report, gate, shots, rng)
        return

    rows = _assignments(len(circuit.inputs), len(circuit.inputs) - 1, shots, rng)
    batch = run_boolean_batch(circuit, circuit.inputs, rows)
    expected = rows.copy()
    expected[:, -1] ^= rows[:, :-1].all(axis=1)
    _check_restored(report, batch, list(circuit.inputs), expected, rows, "controls or target")
    if ancillas:
        _check_restored(report, batch, ancillas, np.zeros((len(rows), len(ancillas)), dtype=bool), rows, "ancillas")
    report.checked = len(rows)
    logger.debug("control: %d assignments over %d controls", len(rows), len(controls))


def _verify_control_vector(circuit: AdaptiveCircuit, report: VerificationReport, gate: GateSpec, shots: int, rng) -> None:
    """Non-X payloads: the target carries a random vector, controls are bits."""
    controls, target = list(circuit.inputs[:-1]), circuit.inputs[-1]
    u = gate.unitary()
    rows = _assignments(len(controls), len(controls), shots, rng)
    for row in rows:
        psi = _random_state(1, rng)
        state = BooleanState(bits={c: int(b) for c, b in zip(controls, row)}, target=target, target_vector=psi)
        try:
            final = run_boolean(circuit, state)
        except SimulationError as e:
            report.fail(f"controls {_bits(row)}: {e}")
            continue
        want = u @ psi if row.all() else psi
        if not np.allclose(final.target_vector, want, atol=1e-9):
            report.fail(f"target state wrong for controls {_bits(row)}")
        changed = [q for q, b in final.bits.items() if b != (int(row[controls.index(q)]) if q in controls else 0)]
        if changed:
            report.fail(f"controls {_bits(row)}: {changed[0]} not restored")
    report.checked = len(rows)


def _verify_control_dense(circuit: AdaptiveCircuit, report: VerificationReport, shots: int, rng) -> None:
    controls, target = list(circuit.inputs[:-1]), circuit.inputs[-1]
    addresses = list(circuit.inputs) + _other_qubits(circuit)
    u = _payload(circuit).unitary()
    rows = _assignments(len(controls), len(controls), shots, rng)
    for row in rows:
        psi = _random_state(1, rng)
        state = DenseState(addresses, _basis_with_target(addresses, dict(zip(controls, row)), target, psi))
        want_psi = u @ psi if row.all() else psi
        want = _basis_with_target(addresses, dict(zip(controls, row)), target, want_psi)
        final, _ = run_dense(circuit, state)
        if not np.allclose(final.vector(), want, atol=1e-9):
            report.fail(f"state wrong for controls {_bits(row)}")
    report.checked = len(rows)


def _basis_with_target(addresses: Sequence, bits: Dict, target, psi: np.ndarray) -> np.ndarray:
    vector = np.array([1.0], dtype=complex)
    for q in addresses:
        if q == target:
            factor = psi
        else:
            factor = np.zeros(2, dtype=complex)
            factor[int(bits.get(q, 0))] = 1.0
        vector = np.kron(vector, factor)
    return vector


def _verify_fanout_boolean(circuit: AdaptiveCircuit, report: VerificationReport, shots: int, rng) -> None:
    ancillas = _other_qubits(circuit)
    rows = _assignments(len(circuit.inputs), len(circuit.inputs) - 1, shots, rng)
    batch = run_boolean_batch(circuit, circuit.inputs, rows)
    expected = rows.copy()
    expected[:, :-1] ^= rows[:, [-1]]
    _check_restored(report, batch, list(circuit.inputs), expected, rows, "controls or source")
    if ancillas:
        _check_restored(report, batch, ancillas, np.zeros((len(rows), len(ancillas)), dtype=bool), rows, "ancillas")
    report.checked = len(rows)


# Reorder


_PREPARE = {"X": ("H",), "Y": ("H", "S"), "Z": ()}


def _reorder_destinations(circuit: AdaptiveCircuit) -> Dict:
    moves = {int(j): int(c) for j, c in circuit.meta.get("moves", [])}
    n = int(circuit.meta.get("n", len(circuit.inputs)))
    return {(0, j): ((moves[j], 0) if j in moves else (0, j)) for j in range(n)}


def _verify_reorder_stabilizer(circuit: AdaptiveCircuit, report: VerificationReport, shots: int, seed: int) -> None:
    """
    Data qubits start in random X, Y or Z eigenstates; after the run the basis
    change is undone at the destination and Z must be deterministic with the
    prepared sign. Every other qubit must be back in |0>.
    """
    destinations = _reorder_destinations(circuit)
    addresses = sorted(circuit.qubits() | set(destinations) | set(destinations.values()))
    rng = np.random.default_rng(seed)
    for shot in range(shots):
        state = StabilizerState(addresses)
        prepared = {}
        for source in destinations:
            basis = str(rng.choice(["X", "Y", "Z"]))
            sign = int(rng.integers(0, 2))
            if sign:
                state.pauli(source, 1, 0)
            for gate in _PREPARE[basis]:
                getattr(state, gate.lower())(source)
            prepared[source] = (basis, sign)

        final, _ = run_stabilizer(circuit, state, RandomOutcomes(seed + shot))
        for source, dest in destinations.items():
            basis, sign = prepared[source]
            if basis == "Y":
                for _ in range(3):
                    final.s(dest)
            if basis in ("X", "Y"):
                final.h(dest)
            got = final.peek(dest)
            if got != sign:
                report.fail(f"shot {shot}: {basis}{'-' if sign else '+'} state of {source} not found at {dest}")
        occupied = set(destinations.values())
        for q in addresses:
            if q not in occupied and final.peek(q) != 0:
                report.fail(f"shot {shot}: ancilla {q} not returned to |0>")
                break
    report.checked = shots


# Interaction rounds


def _reference(circuit: AdaptiveCircuit) -> AdaptiveCircuit:
    meta = circuit.meta
    if "rounds" in meta:
        rounds = meta["rounds"]
    elif "items" in meta:
        rounds = [meta["items"]]
    else:
        raise VerificationError("routing circuit carries no interaction items")
    return rounds_circuit(int(meta["n"]), [[item_from_record(r) for r in items] for items in rounds])


def _verify_rounds_dense(circuit: AdaptiveCircuit, report: VerificationReport, shots: int, seed: int) -> None:
    """
    Random input states on the data qubits; the compiled run must leave the
    same state in (0, j) as the reference run given the same outcomes.
    """
    reference = _reference(circuit)
    measurements = {int(src): int(final) for src, final in circuit.meta.get("measurements", [])}
    inputs = list(circuit.inputs)
    addresses = inputs + _other_qubits(circuit)
    rng = np.random.default_rng(seed)
    for shot in range(shots):
        psi = _random_state(len(inputs), rng)
        rest = np.zeros(2 ** (len(addresses) - len(inputs)), dtype=complex)
        rest[0] = 1.0
        final, record = run_dense(circuit, DenseState(addresses, np.kron(psi, rest)), RandomOutcomes(seed + shot))
        try:
            got = final.reduced(inputs)
        except SimulationError as e:
            report.fail(f"shot {shot}: {e}")
            continue
        script = {src: record[compiled] for src, compiled in measurements.items()}
        expected, _ = run_dense(reference, DenseState(list(range(len(inputs))), psi), ScriptedOutcomes(script))
        if not _same_up_to_phase(got, expected.vector()):
            report.fail(f"shot {shot}: data state differs from the reference run (outcomes {sorted(script.items())})")
    report.checked = shots


_CHECKS = {
    ("control", BOOLEAN): _verify_control_boolean,
    ("control", DENSE): _verify_control_dense,
    ("fanout", BOOLEAN): _verify_fanout_boolean,
}
_SEEDED_CHECKS = {
    ("reorder", STABILIZER): _verify_reorder_stabilizer,
    ("interact", DENSE): _verify_rounds_dense,
    ("ccac", DENSE): _verify_rounds_dense,
}


def verify(
    circuit: AdaptiveCircuit,
    simulator: Optional[str] = None,
    *,
    shots: int = DEFAULT_SHOTS,
    seed: Optional[int] = None,
) -> VerificationReport:
    """
    Check a generated circuit against its generator's contract.

    Args:
        circuit: Circuit whose meta names the generator.
        simulator: boolean, stabilizer or dense; defaults to the one suited
            to the circuit kind.
        shots: Random samples when an exhaustive check is not possible.
        seed: Seed for inputs and measurement outcomes.

    Returns:
        VerificationReport; unsupported kind/simulator pairs and simulator
        errors are reported as failures.

    Raises:
        VerificationError: If the circuit does not say which generator built it.
    """
    kind = circuit.meta.get("kind")
    if kind not in DEFAULT_SIMULATOR:
        raise VerificationError(f"circuit meta names no known generator (kind={kind!r})")
    simulator = simulator or DEFAULT_SIMULATOR[kind]
    if simulator not in SIMULATORS:
        raise VerificationError(f"unknown simulator {simulator!r}")
    if seed is None:
        seed = int(getattr(settings, "GRIDROUTE_DEFAULT_SEED", 0))

    report = VerificationReport(kind=kind, simulator=simulator)
    report.violations = [str(v) for v in validate(circuit)]
    try:
        if (kind, simulator) in _CHECKS:
            _CHECKS[(kind, simulator)](circuit, report, shots, np.random.default_rng(seed))
        elif (kind, simulator) in _SEEDED_CHECKS:
            _SEEDED_CHECKS[(kind, simulator)](circuit, report, shots, seed)
        else:
            report.fail(f"the {simulator} simulator cannot check {kind} circuits")
    except (SimulationError, CircuitError, VerificationError) as e:
        report.fail(str(e))
    logger.info("verified %s circuit with %s: %s", kind, simulator, "passed" if report.passed else "failed")
    return report
