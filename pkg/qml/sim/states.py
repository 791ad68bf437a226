"""
Pure and mixed N-qubit states.

Responsibilities:
- StateVector / DensityMatrix records with their normalization invariants
- Tensor products under the configured qubit cap
- Partial trace, purity, fidelity and trace distance
- Haar-random pure states and Ginibre-random mixed states
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike
from scipy import linalg

from qml.config import active_config
from qml.constants import HERMITIAN_TOL, NORM_TOL, PSD_TOL
from qml.errors import ArgumentError, ValidationError
from qml.linalg import ComplexArray, as_complex, dagger, qubits_for_dim
from qml.rng import Seed, as_generator
from qml.sim.haar import haar_random_unitary

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True, eq=False)
class StateVector:
    """Normalized amplitude vector of length 2^N (qubit 0 = most significant bit)."""

    amplitudes: ComplexArray
    num_qubits: int = -1

    def __post_init__(self) -> None:
        amps = as_complex(self.amplitudes).reshape(-1)
        n = qubits_for_dim(amps.size)
        if self.num_qubits not in (-1, n):
            raise ValidationError(
                f"amplitude length {amps.size} does not match num_qubits={self.num_qubits}"
            )
        active_config().check_qubits(n)
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValidationError(f"state is not normalized (norm² = {norm:.12g})")
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "num_qubits", n)

    # -- construction --------------------------------------------------------

    @classmethod
    def zero(cls, num_qubits: int) -> StateVector:
        return cls.basis(0, num_qubits)

    @classmethod
    def basis(cls, index: int, num_qubits: int) -> StateVector:
        if not 0 <= index < 2**num_qubits:
            raise ArgumentError(f"basis index {index} out of range for {num_qubits} qubits")
        amps = np.zeros(2**num_qubits, dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps)

    @classmethod
    def from_bits(cls, bits: str | Sequence[int]) -> StateVector:
        bitstring = "".join(str(int(b)) for b in bits)
        return cls.basis(int(bitstring or "0", 2), len(bitstring))

    @classmethod
    def normalized(cls, vec: ArrayLike) -> StateVector:
        amps = as_complex(vec).reshape(-1)
        norm = float(np.linalg.norm(amps))
        if norm == 0.0:
            raise ArgumentError("cannot normalize the zero vector")
        return cls(amps / norm)

    # -- views ---------------------------------------------------------------

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def density(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))

    def inner(self, other: StateVector) -> complex:
        """⟨self|other⟩."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True, slots=True, eq=False)
class DensityMatrix:
    """Hermitian, trace-one, positive semidefinite operator.

    ``require_psd=False`` admits raw estimates (linear-inversion tomography)
    that are Hermitian and trace one but may have negative eigenvalues.
    """

    matrix: ComplexArray
    num_qubits: int = -1
    require_psd: bool = field(default=True, repr=False)

    def __post_init__(self) -> None:
        m = as_complex(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValidationError(f"density matrix must be square, got shape {m.shape}")
        n = qubits_for_dim(m.shape[0])
        if self.num_qubits not in (-1, n):
            raise ValidationError(
                f"matrix dimension {m.shape[0]} does not match num_qubits={self.num_qubits}"
            )
        active_config().check_qubits(n)
        if not np.allclose(m, dagger(m), atol=HERMITIAN_TOL, rtol=0.0):
            raise ValidationError("density matrix is not Hermitian")
        trace = complex(np.trace(m))
        if abs(trace - 1.0) > NORM_TOL:
            raise ValidationError(f"density matrix trace is {trace.real:.12g}, expected 1")
        if self.require_psd:
            lowest = float(np.linalg.eigvalsh(m).min())
            if lowest < -PSD_TOL:
                raise ValidationError(f"density matrix has negative eigenvalue {lowest:.3g}")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "num_qubits", n)

    @classmethod
    def maximally_mixed(cls, num_qubits: int) -> DensityMatrix:
        dim = 2**num_qubits
        return cls(np.eye(dim, dtype=np.complex128) / dim)

    @property
    def degenerate(self) -> bool:
        """True for the 1x1 result of tracing out every qubit."""
        return self.num_qubits == 0

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.matrix).min())


type State = StateVector | DensityMatrix


def to_density(state: State) -> DensityMatrix:
    return state.density() if isinstance(state, StateVector) else state


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def _raw(x: StateVector | DensityMatrix | ArrayLike) -> ComplexArray:
    if isinstance(x, StateVector):
        return x.amplitudes
    if isinstance(x, DensityMatrix):
        return x.matrix
    return as_complex(x)


def tensor(
    a: StateVector | DensityMatrix | ArrayLike,
    b: StateVector | DensityMatrix | ArrayLike,
) -> StateVector | DensityMatrix | ComplexArray:
    """Kronecker product; mixing a pure and a mixed state yields a DensityMatrix."""
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        active_config().check_qubits(a.num_qubits + b.num_qubits)
        return StateVector(np.kron(a.amplitudes, b.amplitudes))
    if isinstance(a, StateVector | DensityMatrix) and isinstance(b, StateVector | DensityMatrix):
        da, db = to_density(a), to_density(b)
        active_config().check_qubits(da.num_qubits + db.num_qubits)
        return DensityMatrix(np.kron(da.matrix, db.matrix))
    ma, mb = _raw(a), _raw(b)
    active_config().check_qubits(qubits_for_dim(ma.shape[0] * mb.shape[0]))
    return np.kron(ma, mb)


def partial_trace(rho: State, keep: Sequence[int]) -> DensityMatrix:
    """Reduced state on the *keep* qubits, in ascending qubit order."""
    d = to_density(rho)
    n = d.num_qubits
    kept = sorted({int(q) for q in keep})
    if any(q < 0 or q >= n for q in kept):
        raise ArgumentError(f"keep indices {kept} out of range for {n} qubits")
    if not kept:
        logger.debug("partial trace over every qubit: returning the 1x1 trace")
    traced = [q for q in range(n) if q not in kept]
    k = len(kept)
    tensor_ = d.matrix.reshape([2] * (2 * n)).transpose(
        kept + traced + [q + n for q in kept] + [q + n for q in traced]
    )
    dk, dt = 2**k, 2 ** len(traced)
    reduced = np.einsum("atbt->ab", tensor_.reshape(dk, dt, dk, dt))
    return DensityMatrix(reduced)


def purity(rho: State) -> float:
    d = to_density(rho)
    return float(np.real(np.trace(d.matrix @ d.matrix)))


def fidelity(rho: State, sigma: State) -> float:
    """Uhlmann fidelity (Tr √(√ρ σ √ρ))²."""
    if isinstance(rho, StateVector) and isinstance(sigma, StateVector):
        return abs(rho.inner(sigma)) ** 2
    if isinstance(rho, StateVector):
        rho, sigma = sigma, rho
    if isinstance(sigma, StateVector):
        psi = sigma.amplitudes
        return float(np.real(np.vdot(psi, to_density(rho).matrix @ psi)))
    root = linalg.sqrtm(rho.matrix)
    inner = linalg.sqrtm(root @ sigma.matrix @ root)
    return float(np.real(np.trace(inner)) ** 2)


def trace_distance(rho: State | ArrayLike, sigma: State | ArrayLike) -> float:
    """½‖ρ − σ‖₁ for Hermitian arguments."""
    a = to_density(rho).matrix if isinstance(rho, StateVector | DensityMatrix) else _raw(rho)
    b = _raw(to_density(sigma) if isinstance(sigma, StateVector) else sigma)
    return 0.5 * float(np.abs(np.linalg.eigvalsh(a - b)).sum())


def random_state(num_qubits: int, seed: Seed | None = None) -> StateVector:
    """Haar-random pure state (first column of a Haar unitary)."""
    u = haar_random_unitary(2**num_qubits, seed)
    return StateVector(u[:, 0])


def random_density_matrix(
    num_qubits: int, seed: Seed | None = None, rank: int | None = None,
) -> DensityMatrix:
    """Ginibre-ensemble mixed state GG†/Tr(GG†)."""
    rng = as_generator(seed)
    dim = 2**num_qubits
    r = dim if rank is None else rank
    g = rng.standard_normal((dim, r)) + 1j * rng.standard_normal((dim, r))
    m = g @ dagger(g)
    m = (m + dagger(m)) / 2
    return DensityMatrix(m / np.trace(m).real)
