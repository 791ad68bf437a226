"""First-order optimizers over flat parameter vectors (minimization)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike

from qml.constants import ADAM_BETA1, ADAM_BETA2, ADAM_EPS
from qml.errors import ArgumentError


def _check_shapes(params: np.ndarray, grads: np.ndarray) -> None:
    if params.shape != grads.shape:
        raise ArgumentError(f"gradient shape {grads.shape} != parameter shape {params.shape}")


@dataclass(slots=True)
class SGD:
    lr: float

    def __post_init__(self) -> None:
        if self.lr <= 0:
            raise ArgumentError(f"learning rate must be positive, got {self.lr}")

    def step(self, params: ArrayLike, grads: ArrayLike) -> np.ndarray:
        p = np.asarray(params, dtype=float)
        g = np.asarray(grads, dtype=float)
        _check_shapes(p, g)
        return p - self.lr * g


@dataclass(slots=True)
class Adam:
    """Adam with bias-corrected first and second moments."""

    lr: float
    beta1: float = ADAM_BETA1
    beta2: float = ADAM_BETA2
    eps: float = ADAM_EPS
    _m: np.ndarray | None = field(default=None, init=False, repr=False)
    _v: np.ndarray | None = field(default=None, init=False, repr=False)
    _t: int = field(default=0, init=False, repr=False)

    def __post_init__(self) -> None:
        if self.lr <= 0:
            raise ArgumentError(f"learning rate must be positive, got {self.lr}")
        if not (0 <= self.beta1 < 1 and 0 <= self.beta2 < 1):
            raise ArgumentError("Adam betas must lie in [0, 1)")

    def step(self, params: ArrayLike, grads: ArrayLike) -> np.ndarray:
        p = np.asarray(params, dtype=float)
        g = np.asarray(grads, dtype=float)
        _check_shapes(p, g)
        if self._m is None or self._m.shape != p.shape:
            self._m = np.zeros_like(p)
            self._v = np.zeros_like(p)
            self._t = 0
        assert self._v is not None
        self._t += 1
        self._m = self.beta1 * self._m + (1 - self.beta1) * g
        self._v = self.beta2 * self._v + (1 - self.beta2) * g * g
        m_hat = self._m / (1 - self.beta1**self._t)
        v_hat = self._v / (1 - self.beta2**self._t)
        return p - self.lr * m_hat / (np.sqrt(v_hat) + self.eps)


type Optimizer = SGD | Adam


def make_optimizer(name: str, lr: float) -> Optimizer:
    match name.lower():
        case "sgd":
            return SGD(lr)
        case "adam":
            return Adam(lr)
        case _:
            raise ArgumentError(f"unknown optimizer {name!r} (expected sgd or adam)")
