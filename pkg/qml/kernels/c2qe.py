"""Classical-to-quantum embedding ρ_r = (I + Σ rᵢPᵢ)/2^N of ℓ₁-normalized vectors.

Pauli strings Pᵢ run lexicographically over {I,X,Y,Z}^N without the
identity; N is the smallest register with 4^N − 1 ≥ len(r).
"""

from __future__ import annotations

import logging

import numpy as np
from numpy.typing import ArrayLike

from qml.constants import NORM_TOL
from qml.errors import ArgumentError
from qml.rng import Seed, as_generator
from qml.sim.paulis import pauli_matrix, pauli_strings
from qml.sim.states import DensityMatrix

logger = logging.getLogger(__name__)


def c2qe_qubits(length: int) -> int:
    n = 1
    while 4**n - 1 < length:
        n += 1
    return n


def _prepare(r: ArrayLike) -> tuple[np.ndarray, int, list[str]]:
    vec = np.asarray(r, dtype=float).reshape(-1)
    if vec.size == 0:
        raise ArgumentError("C2QE needs a non-empty vector")
    l1 = float(np.abs(vec).sum())
    if abs(l1 - 1.0) > NORM_TOL:
        raise ArgumentError(f"C2QE needs ‖r‖₁ = 1, got {l1:.12g}")
    n = c2qe_qubits(vec.size)
    labels = list(pauli_strings(n, include_identity=False))
    padded = np.zeros(len(labels))
    padded[: vec.size] = vec
    return padded, n, labels


def c2qe_embed(r: ArrayLike) -> DensityMatrix:
    """Deterministic closed form of the embedding."""
    coeffs, n, labels = _prepare(r)
    dim = 2**n
    rho = np.eye(dim, dtype=np.complex128)
    for c, label in zip(coeffs, labels, strict=True):
        if c != 0:
            rho += c * pauli_matrix(label)
    return DensityMatrix(rho / dim)


def c2qe_sample(r: ArrayLike, draws: int, seed: Seed | None = None) -> DensityMatrix:
    """Empirical mixture: draw i with probability |rᵢ|, prepare (I + sign(rᵢ)Pᵢ)/2^N."""
    if draws < 1:
        raise ArgumentError(f"draws must be positive, got {draws}")
    coeffs, n, labels = _prepare(r)
    dim = 2**n
    probs = np.abs(coeffs)
    counts = as_generator(seed).multinomial(draws, probs / probs.sum())
    rho = np.eye(dim, dtype=np.complex128)
    for c, k, label in zip(coeffs, counts, labels, strict=True):
        if k:
            rho += (k / draws) * np.sign(c) * pauli_matrix(label)
    logger.debug("C2QE sample: %d draws over %d Pauli terms", draws, int(np.count_nonzero(counts)))
    return DensityMatrix(rho / dim)
