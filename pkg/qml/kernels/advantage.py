"""
Quantum-advantage diagnostics between a classical and a quantum kernel.

Responsibilities:
- Geometric difference g(K_C‖K_Q) on trace-normalized kernels
- Adversarial labels saturating s_C(y) = g² s_Q(y)
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike
from scipy import linalg

from qml.constants import GEOMETRIC_REGULARIZER
from qml.errors import ArgumentError
from qml.kernels.ridge import model_complexity

logger = logging.getLogger(__name__)


def normalize_trace(k: ArrayLike) -> np.ndarray:
    """Rescale so that Tr K = n."""
    m = np.asarray(getattr(k, "entries", k), dtype=float)
    trace = float(np.trace(m))
    if trace <= 0:
        raise ArgumentError("kernel matrix has non-positive trace")
    return m * (m.shape[0] / trace)


def _psd_sqrt(k: np.ndarray) -> np.ndarray:
    w, v = linalg.eigh(k)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.T


@dataclass(frozen=True, slots=True, eq=False)
class GeometricDifference:
    value: float
    regularizer: float
    matrix: np.ndarray

    def __float__(self) -> float:
        return self.value


def _inverse(k: np.ndarray) -> tuple[np.ndarray, float]:
    if np.linalg.matrix_rank(k) < k.shape[0]:
        logger.warning("geometric difference: K_C is singular, regularizing with %.0e",
                       GEOMETRIC_REGULARIZER)
        return linalg.inv(k + GEOMETRIC_REGULARIZER * np.eye(k.shape[0])), GEOMETRIC_REGULARIZER
    return linalg.inv(k), 0.0


def geometric_difference(k_c: ArrayLike, k_q: ArrayLike) -> GeometricDifference:
    """g = √‖√K_Q K_C⁻¹ √K_Q‖_∞ after normalizing both traces to n."""
    kc, kq = normalize_trace(k_c), normalize_trace(k_q)
    if kc.shape != kq.shape:
        raise ArgumentError("kernel matrices differ in size")
    root = _psd_sqrt(kq)
    inv, reg = _inverse(kc)
    m = root @ inv @ root
    m = (m + m.T) / 2
    top = float(linalg.eigvalsh(m)[-1])
    return GeometricDifference(math.sqrt(max(top, 0.0)), reg, m)


@dataclass(frozen=True, slots=True, eq=False)
class AdversarialLabels:
    real: np.ndarray
    signs: np.ndarray
    ratio: float
    g_squared: float


def adversarial_dataset(k_c: ArrayLike, k_q: ArrayLike) -> AdversarialLabels:
    """y = √K_Q v for the top eigenvector v of √K_Q K_C⁻¹ √K_Q.

    Ties in the top eigenspace take the lowest-index eigenvector; the sign
    is fixed so the largest-magnitude entry is positive.  Thresholded
    labels are +1 strictly above the median and −1 otherwise.
    """
    gd = geometric_difference(k_c, k_q)
    w, v = linalg.eigh(gd.matrix)
    top = w[-1]
    candidates = np.flatnonzero(w >= top - 1e-10 * max(1.0, abs(top)))
    vec = v[:, candidates[0]]
    if vec[np.argmax(np.abs(vec))] < 0:
        vec = -vec
    kc, kq = normalize_trace(k_c), normalize_trace(k_q)
    y = _psd_sqrt(kq) @ vec
    s_c = model_complexity(kc, y).value
    s_q = model_complexity(kq, y).value
    ratio = s_c / s_q if s_q > 0 else math.inf
    signs = np.where(y > np.median(y), 1.0, -1.0)
    return AdversarialLabels(y, signs, ratio, gd.value**2)
