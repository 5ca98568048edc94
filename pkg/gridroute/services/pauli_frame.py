"""
Pauli frame

Single-qubit Pauli operators in X^x Z^z form, the Bell-label corrections
sigma_0..sigma_3, and composition of deferred teleportation corrections.
"""

from dataclasses import dataclass
from functools import reduce
from typing import FrozenSet, Mapping, Sequence

import numpy as np

from .circuit_ir import ClassicalCondition


class PauliError(Exception):
    """Raised for out-of-range Bell labels or malformed Pauli operators."""

    pass


@dataclass(frozen=True)
class PauliOp:
    """The operator i^phase * X^x_bit * Z^z_bit."""

    x_bit: int = 0
    z_bit: int = 0
    phase: int = 0

    def __post_init__(self):
        if self.x_bit not in (0, 1) or self.z_bit not in (0, 1):
            raise PauliError(f"Pauli bits must be 0 or 1, got x={self.x_bit} z={self.z_bit}")

    def __mul__(self, other: "PauliOp") -> "PauliOp":
        # Z^b X^c = (-1)^(b c) X^c Z^b
        phase = self.phase + other.phase + 2 * (self.z_bit & other.x_bit)
        return PauliOp(self.x_bit ^ other.x_bit, self.z_bit ^ other.z_bit, phase % 4)

    def matrix(self) -> np.ndarray:
        x = np.array([[0, 1], [1, 0]], dtype=complex)
        z = np.array([[1, 0], [0, -1]], dtype=complex)
        return (1j**self.phase) * np.linalg.matrix_power(x, self.x_bit) @ np.linalg.matrix_power(z, self.z_bit)

    def same_up_to_phase(self, other: "PauliOp") -> bool:
        return (self.x_bit, self.z_bit) == (other.x_bit, other.z_bit)

    @property
    def label(self) -> str:
        return {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "XZ"}[(self.x_bit, self.z_bit)]


IDENTITY = PauliOp()

_SIGMAS = (PauliOp(0, 0), PauliOp(1, 0), PauliOp(1, 1), PauliOp(0, 1))

# (phase bit, flip bit) read off a Bell measurement -> Bell label
_BELL_LABELS = {(0, 0): 0, (0, 1): 1, (1, 1): 2, (1, 0): 3}


def sigma_of(index: int) -> PauliOp:
    """
    Pauli that maps Phi_0 to Phi_index on the second qubit.

    sigma_0 = I, sigma_1 = X, sigma_2 = XZ, sigma_3 = Z.

    Raises:
        PauliError: If index is not in 0..3.
    """
    if index not in range(4):
        raise PauliError(f"Bell label must be in 0..3, got {index}")
    return _SIGMAS[index]


def bell_label(phase_bit: int, flip_bit: int) -> int:
    return _BELL_LABELS[(phase_bit, flip_bit)]


@dataclass(frozen=True)
class BellOutcome:
    """
    Wiring of one Bell measurement: the phase bit is the result of the
    H-then-measure qubit, the flip bit the result of the CNOT target.
    """

    phase_id: int
    flip_id: int

    @property
    def measurement_ids(self) -> FrozenSet[int]:
        return frozenset((self.phase_id, self.flip_id))

    def index(self, record: Mapping[int, int]) -> int:
        return bell_label(record[self.phase_id], record[self.flip_id])


def compose(corrections: Sequence[PauliOp]) -> PauliOp:
    """
    Single Pauli equal to applying `corrections` in order.

    The product is evaluated as a balanced binary tree, so a controller with
    parallel classical hardware needs only logarithmic time.
    """
    if not corrections:
        return IDENTITY
    if len(corrections) == 1:
        return corrections[0]
    mid = len(corrections) // 2
    return compose(corrections[mid:]) * compose(corrections[:mid])


def correction_condition(outcomes: Sequence[BellOutcome]) -> ClassicalCondition:
    """
    Parity condition equal to composing the sigmas of all outcomes.

    Every flip bit contributes an X and every phase bit a Z; repeated ids
    cancel.
    """
    flips = reduce(lambda acc, o: acc ^ {o.flip_id}, outcomes, frozenset())
    phases = reduce(lambda acc, o: acc ^ {o.phase_id}, outcomes, frozenset())
    return ClassicalCondition(x_parity_of=frozenset(flips), z_parity_of=frozenset(phases))
