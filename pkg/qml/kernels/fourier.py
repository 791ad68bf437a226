"""
Fourier representation of angle-encoding kernels.

k(x, x') = Σ_{s,t} c_{st} e^{i s·x} e^{i t·x'} with s, t ∈ {−1, 0, 1}^d for
rotation encodings (Pauli generators have eigenvalue gaps of at most 1).
Coefficients are fitted by least squares on a probe lattice.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike
from scipy import linalg

from qml.constants import FOURIER_CONDITION_LIMIT, FOURIER_MAX_QUBITS
from qml.errors import ArgumentError, SingularityError
from qml.kernels.feature_maps import FeatureMapKind, FeatureMapSpec
from qml.kernels.kernels import quantum_kernel
from qml.rng import Seed, as_generator

logger = logging.getLogger(__name__)

_ANGLE_KINDS = (FeatureMapKind.ANGLE_X, FeatureMapKind.ANGLE_Y, FeatureMapKind.SINGLE_QUBIT_RX)


@dataclass(frozen=True, slots=True, eq=False)
class FourierTable:
    frequencies: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    coefficients: np.ndarray
    residual: float
    condition: float

    def coefficient(self, s: tuple[int, ...], t: tuple[int, ...]) -> complex:
        return complex(self.coefficients[self.frequencies.index((tuple(s), tuple(t)))])

    def as_dict(self, tol: float = 1e-12) -> dict[tuple[tuple[int, ...], tuple[int, ...]], complex]:
        return {f: complex(c) for f, c in zip(self.frequencies, self.coefficients, strict=True)
                if abs(c) > tol}

    def evaluate(self, x: ArrayLike, x_prime: ArrayLike) -> float:
        a = np.asarray(x, dtype=float).reshape(-1)
        b = np.asarray(x_prime, dtype=float).reshape(-1)
        phases = np.array([np.exp(1j * (np.dot(s, a) + np.dot(t, b))) for s, t in self.frequencies])
        return float(np.real(phases @ self.coefficients))


def _frequency_lattice(d: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    spectrum = list(itertools.product((-1, 0, 1), repeat=d))
    return [(s, t) for s in spectrum for t in spectrum]


def kernel_fourier_decompose(
    spec: FeatureMapSpec,
    num_features: int,
    probe_points: int = 4,
    jitter: float = 0.0,
    seed: Seed | None = None,
) -> FourierTable:
    """Least-squares fit of c_{st} on a probe lattice of *probe_points* angles per variable.

    A uniform lattice with at least three points per variable keeps the
    design columns orthogonal; *jitter* perturbs it to test conditioning.
    """
    if spec.kind not in _ANGLE_KINDS:
        raise ArgumentError(f"Fourier decomposition needs an angle map, got {spec.label}")
    if not 1 <= num_features <= FOURIER_MAX_QUBITS:
        raise ArgumentError(f"Fourier decomposition supports 1..{FOURIER_MAX_QUBITS} features")
    if probe_points < 3:
        raise ArgumentError("need at least three probe angles per variable")
    d = num_features
    base = 2 * math.pi * np.arange(probe_points) / probe_points
    rng = as_generator(seed)
    points = np.array(list(itertools.product(base, repeat=2 * d)))
    if jitter:
        points = points + rng.uniform(-jitter, jitter, size=points.shape)
    freqs = _frequency_lattice(d)
    s_mat = np.array([np.concatenate([s, t]) for s, t in freqs], dtype=float)
    design = np.exp(1j * points @ s_mat.T)
    values = np.array([quantum_kernel(spec, p[:d], p[d:]) for p in points])
    condition = float(np.linalg.cond(design))
    if condition > FOURIER_CONDITION_LIMIT:
        raise SingularityError(f"Fourier fit is ill-conditioned (condition number {condition:.3g})")
    coeffs, *_ = linalg.lstsq(design, values.astype(np.complex128))
    residual = float(np.max(np.abs(design @ coeffs - values)))
    logger.debug("Fourier fit d=%d: %d coefficients, residual %.2e, cond %.2e",
                 d, len(freqs), residual, condition)
    return FourierTable(tuple(freqs), coeffs, residual, condition)
