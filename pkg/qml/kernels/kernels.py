"""
Kernel evaluation and Gram matrices.

Responsibilities:
- Classical polynomial / Gaussian / sigmoid kernels
- Quantum fidelity kernels by exact overlap
- SWAP-test and adjoint-circuit shot estimators of the same quantity
- KernelMatrix record with the symmetry / PSD / unit-diagonal checks
"""

from __future__ import annotations

import enum
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from qml.errors import ArgumentError, ValidationError
from qml.kernels.feature_maps import FeatureMapSpec
from qml.linalg import dagger
from qml.rng import Seed, as_generator
from qml.sim import gates
from qml.sim.circuit import apply_gate
from qml.sim.measure import expectation
from qml.sim.states import StateVector, tensor

logger = logging.getLogger(__name__)


class ClassicalKernelKind(enum.Enum):
    POLYNOMIAL = "polynomial"
    GAUSSIAN = "gaussian"
    SIGMOID = "sigmoid"


@dataclass(frozen=True, slots=True)
class ClassicalKernelSpec:
    """k(x,x') = (x·x'+c)^m, exp(−‖x−x'‖²/2σ²) or tanh(a x·x' + b)."""

    kind: ClassicalKernelKind
    degree: int = 2
    offset: float = 0.0
    sigma: float = 1.0
    a: float = 1.0
    b: float = 0.0

    def __post_init__(self) -> None:
        if self.kind is ClassicalKernelKind.GAUSSIAN and self.sigma <= 0:
            raise ArgumentError(f"gaussian kernel needs sigma > 0, got {self.sigma}")
        if self.kind is ClassicalKernelKind.POLYNOMIAL and self.degree < 1:
            raise ArgumentError(f"polynomial kernel needs degree ≥ 1, got {self.degree}")

    @property
    def label(self) -> str:
        return self.kind.value


type KernelSpec = FeatureMapSpec | ClassicalKernelSpec


def _pair(x: ArrayLike, x_prime: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(x, dtype=float).reshape(-1)
    b = np.asarray(x_prime, dtype=float).reshape(-1)
    if a.shape != b.shape:
        raise ArgumentError(f"kernel inputs differ in length ({a.size} vs {b.size})")
    return a, b


def classical_kernel(spec: ClassicalKernelSpec, x: ArrayLike, x_prime: ArrayLike) -> float:
    a, b = _pair(x, x_prime)
    match spec.kind:
        case ClassicalKernelKind.POLYNOMIAL:
            return float((a @ b + spec.offset) ** spec.degree)
        case ClassicalKernelKind.GAUSSIAN:
            return math.exp(-float(np.sum((a - b) ** 2)) / (2 * spec.sigma**2))
        case ClassicalKernelKind.SIGMOID:
            return math.tanh(spec.a * float(a @ b) + spec.b)
    raise ArgumentError(f"unknown classical kernel {spec.kind}")


def quantum_kernel(spec: FeatureMapSpec, x: ArrayLike, x_prime: ArrayLike) -> float:
    """|⟨φ(x)|φ(x')⟩|², clipped into [0, 1]."""
    value = abs(spec.encode(x).inner(spec.encode(x_prime))) ** 2
    return min(max(value, 0.0), 1.0)


def evaluate_kernel(spec: KernelSpec, x: ArrayLike, x_prime: ArrayLike) -> float:
    if isinstance(spec, FeatureMapSpec):
        return quantum_kernel(spec, x, x_prime)
    return classical_kernel(spec, x, x_prime)


# ---------------------------------------------------------------------------
# Shot estimators
# ---------------------------------------------------------------------------

def _sample_probability(p: float, shots: int, seed: Seed | None) -> float:
    if shots < 0:
        raise ArgumentError(f"shots must be non-negative, got {shots}")
    p = min(max(p, 0.0), 1.0)
    if shots == 0:
        return p
    return as_generator(seed).binomial(shots, p) / shots


def swap_test_kernel(
    spec: FeatureMapSpec, x: ArrayLike, x_prime: ArrayLike, shots: int = 0,
    seed: Seed | None = None,
) -> float:
    """SWAP test: k̂ = 2·Pr(ancilla = 0) − 1, clipped to [0, 1]."""
    phi, psi = spec.encode(x), spec.encode(x_prime)
    n = phi.num_qubits
    if psi.num_qubits != n:
        raise ArgumentError("SWAP test needs equally sized registers")
    state = tensor(StateVector.zero(1), tensor(phi, psi))
    assert isinstance(state, StateVector)
    state = apply_gate(state, gates.H, [0])
    cswap = gates.controlled(gates.SWAP)
    for q in range(n):
        state = apply_gate(state, cswap, [0, 1 + q, 1 + n + q])
    state = apply_gate(state, gates.H, [0])
    ancilla_zero = np.kron(np.diag([1.0, 0.0]), np.eye(4**n))
    p_zero = expectation(state, ancilla_zero)
    p_hat = _sample_probability(p_zero, shots, seed)
    return min(max(2 * p_hat - 1, 0.0), 1.0)


def adjoint_kernel(
    spec: FeatureMapSpec, x: ArrayLike, x_prime: ArrayLike, shots: int = 0,
    seed: Seed | None = None,
) -> float:
    """Frequency of |0…0⟩ after U(x')† U(x)|0…0⟩."""
    u = dagger(spec.unitary(x_prime)) @ spec.unitary(x)
    p_zero = float(abs(u[0, 0]) ** 2)
    return _sample_probability(p_zero, shots, seed)


# ---------------------------------------------------------------------------
# Gram matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True, eq=False)
class KernelMatrix:
    entries: np.ndarray
    provenance: str
    quantum: bool = False

    def __post_init__(self) -> None:
        k = np.asarray(self.entries, dtype=float)
        if k.ndim != 2 or k.shape[0] != k.shape[1]:
            raise ValidationError(f"kernel matrix must be square, got shape {k.shape}")
        if not np.allclose(k, k.T, atol=1e-10, rtol=0.0):
            raise ValidationError("kernel matrix is not symmetric")
        lowest = float(np.linalg.eigvalsh(k).min()) if k.size else 0.0
        if lowest < -1e-8:
            raise ValidationError(f"kernel matrix is not PSD (min eigenvalue {lowest:.3g})")
        if self.quantum and not np.allclose(np.diag(k), 1.0, atol=1e-10):
            raise ValidationError("quantum kernel matrix must have a unit diagonal")
        object.__setattr__(self, "entries", k)

    @property
    def size(self) -> int:
        return int(self.entries.shape[0])


def kernel_matrix(data: Sequence[ArrayLike] | np.ndarray, spec: KernelSpec) -> KernelMatrix:
    rows = [np.asarray(x) for x in data]
    if not rows:
        raise ArgumentError("kernel matrix needs at least one data point")
    n = len(rows)
    k = np.empty((n, n))
    if isinstance(spec, FeatureMapSpec):
        states = [spec.encode(x).amplitudes for x in rows]
        overlaps = np.abs(np.array(states).conj() @ np.array(states).T) ** 2
        k[:] = np.clip(overlaps, 0.0, 1.0)
    else:
        for i in range(n):
            for j in range(i, n):
                k[i, j] = k[j, i] = classical_kernel(spec, rows[i], rows[j])
    logger.debug("assembled %dx%d %s kernel matrix", n, n, spec.label)
    return KernelMatrix(k, spec.label, quantum=isinstance(spec, FeatureMapSpec))


def kernel_vector(data: Sequence[ArrayLike] | np.ndarray, x: ArrayLike, spec: KernelSpec) -> np.ndarray:
    """k(x) = (k(x⁽¹⁾, x), …, k(x⁽ⁿ⁾, x))."""
    return np.array([evaluate_kernel(spec, row, x) for row in data])
