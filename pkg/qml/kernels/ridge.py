"""
Kernel ridge regression in dual form and its risk diagnostics.

Responsibilities:
- ridge_fit / ridge_predict with a = (K + λI)⁻¹ y
- Model complexity s_K(y) = yᵀ K⁻¹ y
- Training and generalization terms of the prediction-error bound
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import ArrayLike
from scipy import linalg

from qml.errors import ArgumentError, SingularityError

logger = logging.getLogger(__name__)


def _as_kernel(k: ArrayLike) -> np.ndarray:
    m = np.asarray(getattr(k, "entries", k), dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ArgumentError(f"kernel matrix must be square, got shape {m.shape}")
    return m


def _labels(y: ArrayLike, n: int) -> np.ndarray:
    v = np.asarray(y, dtype=float).reshape(-1)
    if v.size != n:
        raise ArgumentError(f"{v.size} labels for a {n}x{n} kernel")
    return v


def _regularized(k: np.ndarray, lam: float) -> np.ndarray:
    if lam < 0:
        raise ArgumentError(f"lambda must be non-negative, got {lam}")
    reg = k + lam * np.eye(k.shape[0])
    if np.linalg.matrix_rank(reg) < k.shape[0]:
        raise SingularityError(f"K + λI is singular (λ={lam})")
    return reg


@dataclass(frozen=True, slots=True, eq=False)
class RidgeModel:
    dual: np.ndarray
    lam: float
    train_size: int
    kernel: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "dual": [float(v) for v in self.dual],
            "lambda": self.lam,
            "train_size": self.train_size,
            "kernel": self.kernel,
        }

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> RidgeModel:
        return cls(
            np.asarray(raw["dual"], dtype=float), float(raw["lambda"]), int(raw["train_size"]),
            str(raw.get("kernel", "")),
        )


def ridge_fit(k: ArrayLike, y: ArrayLike, lam: float, kernel: str = "") -> RidgeModel:
    km = _as_kernel(k)
    labels = _labels(y, km.shape[0])
    dual = linalg.solve(_regularized(km, lam), labels, assume_a="sym")
    return RidgeModel(np.asarray(dual), float(lam), km.shape[0], kernel)


def ridge_predict(model: RidgeModel, kvec: ArrayLike) -> float:
    """y(x) = k(x)ᵀ a."""
    v = np.asarray(kvec, dtype=float).reshape(-1)
    if v.size != model.train_size:
        raise ArgumentError(f"kernel vector has {v.size} entries, model has {model.train_size}")
    return float(v @ model.dual)


@dataclass(frozen=True, slots=True)
class ModelComplexity:
    value: float
    pseudo_inverse: bool = False

    def __float__(self) -> float:
        return self.value


def model_complexity(k: ArrayLike, y: ArrayLike) -> ModelComplexity:
    """s_K(y) = yᵀK⁻¹y; a singular K falls back to the pseudo-inverse and says so."""
    km = _as_kernel(k)
    labels = _labels(y, km.shape[0])
    if np.linalg.matrix_rank(km) < km.shape[0]:
        logger.warning("model complexity: singular kernel, using the pseudo-inverse")
        return ModelComplexity(float(labels @ linalg.pinv(km) @ labels), True)
    return ModelComplexity(float(labels @ linalg.solve(km, labels, assume_a="sym")))


@dataclass(frozen=True, slots=True)
class RiskBounds:
    train_bound: float
    gen_bound: float


def kernel_risk_bounds(
    k: ArrayLike, y: ArrayLike, lam: float, n: int | None = None, delta: float = 0.05,
) -> RiskBounds:
    """Training term √(λ² yᵀ(K+λI)⁻²y / n) and generalization term
    √(yᵀ(K+λI)⁻¹K(K+λI)⁻¹y / n) + √(log(1/δ)/n)."""
    if not 0.0 < delta < 1.0:
        raise ArgumentError(f"delta must lie in (0, 1), got {delta}")
    km = _as_kernel(k)
    labels = _labels(y, km.shape[0])
    size = km.shape[0] if n is None else n
    if size < 1:
        raise ArgumentError("n must be positive")
    z = linalg.solve(_regularized(km, lam), labels, assume_a="sym")
    train = math.sqrt(max(lam**2 * float(z @ z), 0.0) / size)
    gen = math.sqrt(max(float(z @ km @ z), 0.0) / size) + math.sqrt(math.log(1 / delta) / size)
    return RiskBounds(train, gen)
