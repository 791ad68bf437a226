"""
Observables and measurement.

Responsibilities:
- Observable record (dense Hermitian matrix with an optional Pauli decomposition)
- Expectation values Tr(ρO)
- Projective and POVM measurement, exact or sampled from a seeded generator
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from qml.constants import COMPLETENESS_TOL, HERMITIAN_TOL, PSD_TOL
from qml.errors import ArgumentError, ValidationError
from qml.linalg import ComplexArray, as_complex, dagger, is_hermitian, qubits_for_dim
from qml.rng import Seed, as_generator
from qml.sim.paulis import pauli_matrix, validate_pauli_string
from qml.sim.states import State, StateVector

logger = logging.getLogger(__name__)

type PauliTerms = tuple[tuple[float, str], ...]


@dataclass(frozen=True, slots=True, eq=False)
class Observable:
    """Hermitian operator O, optionally carried as Σ αᵢ Pᵢ."""

    matrix: ComplexArray
    pauli_terms: PauliTerms | None = None

    def __post_init__(self) -> None:
        m = as_complex(self.matrix)
        if not is_hermitian(m, HERMITIAN_TOL):
            raise ValidationError("observable is not Hermitian")
        if self.pauli_terms is not None:
            terms = tuple((float(c), validate_pauli_string(p)) for c, p in self.pauli_terms)
            rebuilt = sum((c * pauli_matrix(p) for c, p in terms), np.zeros_like(m))
            if not np.allclose(rebuilt, m, atol=1e-9, rtol=0.0):
                raise ValidationError("Pauli terms do not reconstruct the observable matrix")
            object.__setattr__(self, "pauli_terms", terms)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_pauli_terms(cls, terms: Sequence[tuple[float, str]]) -> Observable:
        if not terms:
            raise ArgumentError("at least one Pauli term is required")
        matrix = sum(float(c) * pauli_matrix(p) for c, p in terms)
        return cls(np.asarray(matrix), tuple((float(c), p) for c, p in terms))

    @classmethod
    def pauli(cls, label: str) -> Observable:
        return cls.from_pauli_terms([(1.0, label)])

    @property
    def num_qubits(self) -> int:
        return qubits_for_dim(self.matrix.shape[0])

    def spectral_range(self) -> tuple[float, float]:
        eig = np.linalg.eigvalsh(self.matrix)
        return float(eig[0]), float(eig[-1])


def expectation(state: State, obs: Observable | ArrayLike) -> float:
    """⟨O⟩ = Tr(ρO); the imaginary residue of a Hermitian O is discarded."""
    o = obs.matrix if isinstance(obs, Observable) else as_complex(obs)
    if not isinstance(obs, Observable) and not is_hermitian(o, HERMITIAN_TOL):
        raise ValidationError("observable is not Hermitian")
    if isinstance(state, StateVector):
        if o.shape[0] != state.amplitudes.size:
            raise ArgumentError("observable and state dimensions differ")
        psi = state.amplitudes
        value = np.vdot(psi, o @ psi)
    else:
        if o.shape != state.matrix.shape:
            raise ArgumentError("observable and state dimensions differ")
        value = np.trace(state.matrix @ o)
    return float(np.real(value))


# ---------------------------------------------------------------------------
# Measurement
# ---------------------------------------------------------------------------

def computational_projectors(num_qubits: int) -> tuple[list[ComplexArray], list[str]]:
    """Rank-one projectors |b⟩⟨b| with their bitstring labels."""
    dim = 2**num_qubits
    projectors = []
    for b in range(dim):
        p = np.zeros((dim, dim), dtype=np.complex128)
        p[b, b] = 1.0
        projectors.append(p)
    return projectors, [format(b, f"0{num_qubits}b") for b in range(dim)]


def _outcome_probabilities(state: State, effects: Sequence[ComplexArray]) -> np.ndarray:
    if isinstance(state, StateVector):
        psi = state.amplitudes
        probs = [np.vdot(psi, e @ psi).real for e in effects]
    else:
        probs = [np.trace(e @ state.matrix).real for e in effects]
    p = np.clip(np.asarray(probs, dtype=float), 0.0, None)
    return p / p.sum()


def _histogram(
    probs: np.ndarray, labels: Sequence[str], shots: int, seed: Seed | None,
) -> dict[str, float]:
    if shots < 0:
        raise ArgumentError(f"shots must be non-negative, got {shots}")
    if shots == 0:
        return {lab: float(p) for lab, p in zip(labels, probs, strict=True) if p > 1e-15}
    counts = as_generator(seed).multinomial(shots, probs)
    return {lab: int(c) for lab, c in zip(labels, counts, strict=True) if c > 0}


def measure_projective(
    state: State,
    projectors: Sequence[ArrayLike],
    shots: int = 0,
    seed: Seed | None = None,
    labels: Sequence[str] | None = None,
) -> dict[str, float]:
    """Born-rule outcome histogram.

    ``shots=0`` returns exact probabilities; otherwise multinomial counts.
    Outcomes with zero probability (or zero counts) are omitted.
    """
    ps = [as_complex(p) for p in projectors]
    dim = ps[0].shape[0] if ps else 0
    total = sum(ps, np.zeros((dim, dim), dtype=np.complex128))
    if not ps or not np.allclose(total, np.eye(dim), atol=COMPLETENESS_TOL, rtol=0.0):
        raise ValidationError("projectors do not sum to the identity")
    for p in ps:
        if not np.allclose(p @ p, p, atol=COMPLETENESS_TOL, rtol=0.0):
            raise ValidationError("measurement operator is not a projector")
    names = list(labels) if labels is not None else [str(i) for i in range(len(ps))]
    return _histogram(_outcome_probabilities(state, ps), names, shots, seed)


def measure_povm(
    state: State,
    effects: Sequence[ArrayLike],
    shots: int = 0,
    seed: Seed | None = None,
    labels: Sequence[str] | None = None,
) -> dict[str, float]:
    """General POVM measurement with the same exact/sampled contract."""
    es = [as_complex(e) for e in effects]
    dim = es[0].shape[0] if es else 0
    total = sum(es, np.zeros((dim, dim), dtype=np.complex128))
    if not es or not np.allclose(total, np.eye(dim), atol=COMPLETENESS_TOL, rtol=0.0):
        raise ValidationError("POVM effects do not sum to the identity")
    for e in es:
        if not np.allclose(e, dagger(e), atol=HERMITIAN_TOL, rtol=0.0):
            raise ValidationError("POVM effect is not Hermitian")
        if np.linalg.eigvalsh(e).min() < -PSD_TOL:
            raise ValidationError("POVM effect is not positive semidefinite")
    names = list(labels) if labels is not None else [str(i) for i in range(len(es))]
    return _histogram(_outcome_probabilities(state, es), names, shots, seed)


def measure_computational(
    state: State, shots: int = 0, seed: Seed | None = None,
) -> dict[str, float]:
    """Computational-basis measurement keyed by bitstrings."""
    if isinstance(state, StateVector):
        probs = state.probabilities()
    else:
        probs = np.clip(np.real(np.diagonal(state.matrix)), 0.0, None)
    probs = probs / probs.sum()
    n = qubits_for_dim(probs.size)
    labels = [format(b, f"0{n}b") for b in range(probs.size)]
    return _histogram(probs, labels, shots, seed)
