"""
Classical perceptron and a margin-controlled synthetic dataset.

Responsibilities:
- perceptron_train: online mistake-driven updates until a clean pass
- synth_margin_dataset: unit-norm points with a known separator of margin ≥ γ
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from qml.constants import NORM_TOL, PERCEPTRON_MAX_PASSES
from qml.errors import ArgumentError
from qml.rng import Seed, as_generator

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True, eq=False)
class PerceptronResult:
    weights: np.ndarray
    mistakes: int
    passes: int
    converged: bool


@dataclass(frozen=True, slots=True, eq=False)
class MarginDataset:
    features: np.ndarray
    labels: np.ndarray
    separator: np.ndarray
    gamma: float

    @property
    def margin(self) -> float:
        """Smallest y·(w*·x) over the set."""
        return float(np.min(self.labels * (self.features @ self.separator)))


def check_labelled(x: ArrayLike, y: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    feats = np.asarray(x, dtype=float)
    labels = np.asarray(y, dtype=float).reshape(-1)
    if feats.ndim != 2 or feats.shape[0] != labels.size:
        raise ArgumentError(f"{labels.size} labels for features of shape {feats.shape}")
    if not np.all(np.isin(labels, (-1.0, 1.0))):
        raise ArgumentError("labels must be ±1")
    norms = np.linalg.norm(feats, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-6):
        raise ArgumentError("perceptron inputs must have unit norm")
    return feats, labels


def perceptron_train(
    x: ArrayLike, y: ArrayLike, max_passes: int = PERCEPTRON_MAX_PASSES,
) -> PerceptronResult:
    """Cycle through the data, adding y·x on every mistake (y·w·x ≤ 0).

    Stops after the first pass without mistakes; reaching *max_passes*
    returns ``converged=False`` instead of raising.
    """
    feats, labels = check_labelled(x, y)
    w = np.zeros(feats.shape[1])
    mistakes = 0
    for p in range(1, max_passes + 1):
        clean = True
        for xi, yi in zip(feats, labels, strict=True):
            if yi * float(w @ xi) <= 0:
                w = w + yi * xi
                mistakes += 1
                clean = False
        if clean:
            logger.debug("perceptron converged after %d passes, %d mistakes", p, mistakes)
            return PerceptronResult(w, mistakes, p, True)
    logger.warning("perceptron hit the pass cap (%d) with %d mistakes", max_passes, mistakes)
    return PerceptronResult(w, mistakes, max_passes, False)


def mistake_bound(gamma: float) -> int:
    """⌈1/γ²⌉ for unit-norm data."""
    return math.ceil(1.0 / gamma**2 - NORM_TOL)


def synth_margin_dataset(n: int, d: int, gamma: float, seed: Seed | None = None) -> MarginDataset:
    """Build x = y·m·w* + √(1−m²)·u with u ⟂ w*, m ∈ [γ, 1) and alternating labels."""
    if not 0.0 < gamma < 1.0:
        raise ArgumentError(f"gamma must lie in (0, 1), got {gamma}")
    if n < 1 or d < 2:
        raise ArgumentError("need n ≥ 1 points in d ≥ 2 dimensions")
    rng = as_generator(seed)
    w = rng.standard_normal(d)
    w /= np.linalg.norm(w)
    labels = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    rng.shuffle(labels)
    feats = np.empty((n, d))
    for i, yi in enumerate(labels):
        u = rng.standard_normal(d)
        u -= (u @ w) * w
        u /= np.linalg.norm(u)
        m = gamma + (1.0 - gamma) * rng.uniform(0.0, 1.0)
        feats[i] = yi * m * w + math.sqrt(max(1.0 - m * m, 0.0)) * u
    return MarginDataset(feats, labels, w, gamma)
