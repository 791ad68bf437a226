"""
Quantum-to-classical read-out by sampling.

Responsibilities:
- Shot-based Pauli expectation estimates with per-qubit basis rotations
- Observable estimates term by term from a Pauli decomposition
- Pauli decomposition of Hermitian matrices
"""

from __future__ import annotations

import logging

import numpy as np
from numpy.typing import ArrayLike

from qml.constants import HERMITIAN_TOL
from qml.errors import ArgumentError, ValidationError
from qml.linalg import as_complex, is_hermitian, qubits_for_dim
from qml.rng import Seed, as_generator
from qml.sim import gates
from qml.sim.gates import apply_operator, conjugate_operator
from qml.sim.measure import Observable, expectation, measure_computational
from qml.sim.paulis import pauli_matrix, pauli_strings, validate_pauli_string
from qml.sim.states import DensityMatrix, State, StateVector

logger = logging.getLogger(__name__)


def sample_bitstrings(state: State, shots: int, seed: Seed | None = None) -> dict[str, int]:
    """Computational-basis counts keyed by bitstring (qubit 0 leftmost)."""
    if shots <= 0:
        raise ArgumentError(f"shots must be positive, got {shots}")
    return {k: int(v) for k, v in measure_computational(state, shots, seed).items()}


def rotate_to_pauli_basis(state: State, pauli: str) -> State:
    """Map the eigenbasis of *pauli* onto the computational basis.

    X is read after H; Y after S† followed by H.  I and Z need nothing.
    """
    label = validate_pauli_string(pauli)
    if len(label) != state.num_qubits:
        raise ArgumentError(f"Pauli string {label!r} does not match {state.num_qubits} qubits")
    ops: list[tuple[np.ndarray, int]] = []
    for q, ch in enumerate(label):
        if ch == "X":
            ops.append((gates.H.matrix, q))
        elif ch == "Y":
            ops.append((gates.H.matrix @ gates.SDG.matrix, q))
    if isinstance(state, StateVector):
        amps = state.amplitudes
        for op, q in ops:
            amps = apply_operator(amps, op, [q])
        return StateVector(amps)
    rho = state.matrix
    for op, q in ops:
        rho = conjugate_operator(rho, op, [q])
    return DensityMatrix((rho + rho.conj().T) / 2)


def parity_value(bitstring: str, pauli: str) -> int:
    """±1 eigenvalue of a rotated outcome: parity over non-identity positions."""
    ones = sum(b == "1" for b, ch in zip(bitstring, pauli, strict=True) if ch != "I")
    return -1 if ones % 2 else 1


def estimate_pauli_expectation(
    state: State, pauli: str, shots: int = 0, seed: Seed | None = None,
) -> float:
    """⟨P⟩ exactly (shots=0) or as the mean of ±1 outcomes."""
    label = validate_pauli_string(pauli)
    if len(label) != state.num_qubits:
        raise ArgumentError(f"Pauli string {label!r} does not match {state.num_qubits} qubits")
    if shots < 0:
        raise ArgumentError(f"shots must be non-negative, got {shots}")
    if shots == 0:
        return expectation(state, pauli_matrix(label))
    if set(label) <= {"I"}:
        return 1.0
    counts = measure_computational(rotate_to_pauli_basis(state, label), shots, seed)
    total = sum(parity_value(bits, label) * c for bits, c in counts.items())
    return float(total) / shots


def estimate_observable(
    state: State, obs: Observable, shots_per_term: int = 0, seed: Seed | None = None,
) -> float:
    """Σ αᵢ ⟨Pᵢ⟩ with one independent estimate per term."""
    if obs.pauli_terms is None:
        raise ValidationError("observable carries no Pauli decomposition")
    rng = as_generator(seed)
    return float(sum(
        c * estimate_pauli_expectation(state, p, shots_per_term, rng) for c, p in obs.pauli_terms
    ))


def pauli_decompose(h: ArrayLike, tol: float = 1e-12) -> list[tuple[float, str]]:
    """Coefficients Tr(H Pᵢ)/2^N, dropping terms below *tol*."""
    m = as_complex(h)
    if not is_hermitian(m, HERMITIAN_TOL):
        raise ValidationError("cannot Pauli-decompose a non-Hermitian matrix")
    n = qubits_for_dim(m.shape[0])
    terms = []
    for label in pauli_strings(n):
        # Pauli matrices are Hermitian, so Tr(HP) = Σ H ∘ Pᵀ
        coeff = float(np.real(np.sum(m * pauli_matrix(label).T))) / 2**n
        if abs(coeff) > tol:
            terms.append((coeff, label))
    logger.debug("decomposed %d-qubit matrix into %d Pauli terms", n, len(terms))
    return terms
