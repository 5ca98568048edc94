"""
Lower-bound analysis

Lightcone certificates for non-adaptive grid circuits, the far-subset
packing utility, numerical sensitivity probes on small circuits and the
scaling tables that compare generated circuits against the distance bound.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np
from django.conf import settings

from .circuit_ir import MEASURE, NANTC, PAULI, Address, AdaptiveCircuit, GateSpec, cost_report, expand
from .grid_geom import ControlLayout, GridPoint, control_layout, distance
from .ring_compactor import control_circuit, fanout_circuit
from .sim_engine import (
    DensityMatrix,
    SimulationError,
    check_density_matrix,
    circuit_unitary,
    partial_trace_to,
    trace_distance,
)

logger = logging.getLogger(__name__)

FAR_SUBSET_CONSTANT = 0.25


class AnalysisError(Exception):
    """Raised when an analysis cannot be carried out on the given input."""

    pass


@dataclass(frozen=True)
class LightconeCertificate:
    """
    Qubits that can influence `target` and the operations through which they do.

    `active_ops` holds (timestep, op) indices into the physical expansion of
    the circuit; `radius` is its physical depth, so every influencing qubit
    lies within that l1 distance of the target.
    """

    target: GridPoint
    influence: FrozenSet[GridPoint]
    active_ops: FrozenSet[Tuple[int, int]]
    depth_bound: int
    radius: int

    def within_radius(self) -> bool:
        return all(distance(q, self.target) <= self.radius for q in self.influence)

    def a_priori(self, points: Iterable[GridPoint]) -> Set[GridPoint]:
        """Points of `points` inside the lightcone ball around the target."""
        return {p for p in points if distance(p, self.target) <= self.radius}


@dataclass(frozen=True)
class SensitivityProbe:
    epsilon: float
    probe_qubit: Address
    observed_qubit: Address
    perturbation: GateSpec
    measured_distance: float

    @property
    def is_sensitive(self) -> bool:
        return self.measured_distance >= self.epsilon - 1e-9


def influence_set(circuit: AdaptiveCircuit, y: GridPoint) -> LightconeCertificate:
    """
    Backward lightcone of qubit y.

    An operation is active if it acts on y or shares a qubit with an active
    operation in a later timestep; the influence is every qubit an active
    operation touches.

    Raises:
        AnalysisError: If the circuit is adaptive.
    """
    if circuit.model != NANTC:
        raise AnalysisError(f"lightcones need a non-adaptive circuit, got {circuit.model}")
    physical = expand(circuit)
    reached: Set[Address] = {y}
    active: Set[Tuple[int, int]] = set()
    influence: Set[Address] = set()
    for t in range(len(physical.timesteps) - 1, -1, -1):
        hit = [
            (j, o) for j, o in enumerate(physical.timesteps[t].ops)
            if reached.intersection(o.qubits)
        ]
        for j, o in hit:
            active.add((t, j))
            reached.update(o.qubits)
            influence.update(o.qubits)

    inputs = [x for x in circuit.inputs if x != y]
    bound = max((distance(x, y) for x in inputs if x in influence), default=0)
    return LightconeCertificate(
        target=y,
        influence=frozenset(influence),
        active_ops=frozenset(active),
        depth_bound=bound,
        radius=len(physical.timesteps),
    )


def depth_lower_bound(layout: ControlLayout) -> int:
    """
    Largest l1 distance from a control to the target.

    Any non-adaptive grid circuit computing a function of every control
    into the target needs at least this many timesteps.
    """
    if not layout.controls:
        raise AnalysisError("layout has no controls")
    return max(distance(c, layout.target) for c in layout.controls)


def far_subset(points: Iterable[GridPoint], x: GridPoint) -> Set[GridPoint]:
    """
    Members of `points` at l1 distance at least |S|^(1/k) / 4 from x.

    For |S| >= 16 at least half of S qualifies.
    """
    s = set(points)
    if not s:
        return set()
    k = len(x)
    threshold = FAR_SUBSET_CONSTANT * len(s) ** (1.0 / k)
    return {p for p in s if distance(p, x) >= threshold}


def density_qubit_limit() -> int:
    return int(getattr(settings, "GRIDROUTE_DENSITY_QUBIT_LIMIT", 10))


def _embed(matrix: np.ndarray, axis: int, n: int) -> np.ndarray:
    full = np.array([[1.0]], dtype=complex)
    for i in range(n):
        full = np.kron(full, matrix if i == axis else np.eye(2, dtype=complex))
    return full


def sensitivity_check(
    circuit: AdaptiveCircuit,
    x: Address,
    y: Address,
    perturbation: GateSpec,
    inputs: Sequence[DensityMatrix],
    *,
    addresses: Optional[Sequence[Address]] = None,
    epsilon: float = 1.0,
) -> SensitivityProbe:
    """
    How far perturbing x before the circuit moves the reduced state of y.

    Args:
        circuit: Measurement-free circuit.
        x: Qubit the perturbation acts on.
        y: Qubit whose reduced state is compared.
        perturbation: Single-qubit unitary applied to x.
        inputs: Density matrices over `addresses`; the largest distance wins.
        addresses: Qubit order of the inputs; defaults to every qubit of the
            circuit plus x and y, sorted.
        epsilon: Threshold recorded on the probe.

    Returns:
        SensitivityProbe with the measured trace distance.

    Raises:
        AnalysisError: If the circuit measures, is too large for density
            matrices, or an input is not a valid density matrix.
    """
    if any(o.gate.name in (MEASURE, PAULI) for o in circuit.ops()):
        raise AnalysisError("sensitivity checks need a measurement-free circuit")
    if perturbation.arity != 1:
        raise AnalysisError(f"perturbation must act on one qubit, got {perturbation.name}")
    order = list(addresses) if addresses is not None else sorted(circuit.qubits() | {x, y})
    limit = density_qubit_limit()
    if len(order) > limit:
        raise AnalysisError(f"{len(order)} qubits exceed the density-matrix limit of {limit}")
    if x not in order or y not in order:
        raise AnalysisError("probe and observed qubits must be part of the address order")

    n = len(order)
    try:
        u = circuit_unitary(circuit, order)
    except SimulationError as e:
        raise AnalysisError(str(e)) from e
    f = _embed(perturbation.unitary(), order.index(x), n)
    keep = order.index(y)

    measured = 0.0
    for rho in inputs:
        rho = np.asarray(rho, dtype=complex)
        try:
            check_density_matrix(rho)
        except SimulationError as e:
            raise AnalysisError(f"invalid input: {e}") from e
        if rho.shape != (2**n, 2**n):
            raise AnalysisError(f"input of shape {rho.shape} does not match {n} qubits")
        plain = partial_trace_to(u @ rho @ u.conj().T, keep)
        perturbed = partial_trace_to(u @ f @ rho @ f.conj().T @ u.conj().T, keep)
        measured = max(measured, trace_distance(perturbed, plain))

    return SensitivityProbe(
        epsilon=epsilon,
        probe_qubit=x,
        observed_qubit=y,
        perturbation=perturbation,
        measured_distance=min(measured, 1.0),
    )


def sensitivity_profile(
    circuit: AdaptiveCircuit,
    fixed: Address,
    others: Sequence[Address],
    perturbation: GateSpec,
    inputs: Sequence[DensityMatrix],
    *,
    mode: str = "input",
    addresses: Optional[Sequence[Address]] = None,
    epsilon: float = 1.0,
) -> List[SensitivityProbe]:
    """
    Probes over many qubits at once.

    In "input" mode `fixed` is the observed qubit and every member of
    `others` is perturbed in turn; in "output" mode `fixed` is perturbed and
    every member of `others` is observed.
    """
    if mode not in ("input", "output"):
        raise AnalysisError(f"unknown sensitivity mode {mode!r}")
    probes = []
    for q in others:
        x, y = (q, fixed) if mode == "input" else (fixed, q)
        probes.append(
            sensitivity_check(circuit, x, y, perturbation, inputs, addresses=addresses, epsilon=epsilon)
        )
    return probes


@dataclass(frozen=True)
class ScalingRow:
    m: int
    n: int
    depth: int
    logical_depth: int
    size: int
    width: int
    depth_bound: int
    fanout_depth: int
    fanout_size: int


@dataclass(frozen=True)
class ScalingReport:
    dim: int
    rows: Tuple[ScalingRow, ...] = field(default_factory=tuple)

    def ratio(self, numerator: str, denominator: str) -> float:
        """max/min of numerator/denominator over the rows."""
        values = [getattr(r, numerator) / getattr(r, denominator) for r in self.rows if getattr(r, denominator)]
        if not values:
            raise AnalysisError("no rows to compare")
        return max(values) / min(values)

    def summary(self) -> Dict[str, float]:
        return {
            "depth_per_m": self.ratio("depth", "m"),
            "logical_depth_per_m": self.ratio("logical_depth", "m"),
            "size_per_n": self.ratio("size", "n"),
        }


def scaling_report(m_values: Sequence[int], dim: int = 2) -> ScalingReport:
    """
    Metrics of the control and fanout circuits for every m, with the lower bound.

    Raises:
        AnalysisError: If an m is even or below 3.
    """
    rows = []
    for m in m_values:
        if m < 3 or m % 2 == 0:
            raise AnalysisError(f"m must be odd and at least 3, got {m}")
        layout = control_layout(m, dim)
        control = cost_report(control_circuit(m, dim))
        spread = cost_report(fanout_circuit(m, dim))
        rows.append(
            ScalingRow(
                m=m,
                n=layout.n,
                depth=control.depth,
                logical_depth=control.logical_depth,
                size=control.size,
                width=control.width,
                depth_bound=depth_lower_bound(layout),
                fanout_depth=spread.depth,
                fanout_size=spread.size,
            )
        )
        logger.debug("scaling row %s", rows[-1])
    report = ScalingReport(dim=dim, rows=tuple(rows))
    logger.info("scaling report dim=%d over %d sizes", dim, len(rows))
    return report
