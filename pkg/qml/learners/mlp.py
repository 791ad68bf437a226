"""
Fully connected networks with explicit backpropagation.

Responsibilities:
- MLP record (weights W^(ℓ) of shape out×in, biases b^(ℓ))
- mlp_forward / mlp_backprop for MSE, cross-entropy and binary cross-entropy
- mlp_train_step: one optimizer update over a flat parameter vector

Batches are rows: X has shape (batch, in).  Losses are averaged over the batch.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike

from qml.constants import PROBABILITY_FLOOR
from qml.errors import ArgumentError, ValidationError
from qml.learners.optim import Optimizer
from qml.rng import Seed, as_generator

logger = logging.getLogger(__name__)


class Activation(Enum):
    SIGMOID = "sigmoid"
    TANH = "tanh"
    RELU = "relu"
    LINEAR = "linear"
    SOFTMAX = "softmax"


class Loss(Enum):
    MSE = "mse"
    CROSS_ENTROPY = "cross_entropy"
    BCE = "bce"


def softmax(z: ArrayLike) -> np.ndarray:
    """Row-wise softmax with max subtraction."""
    a = np.asarray(z, dtype=float)
    shifted = np.exp(a - a.max(axis=-1, keepdims=True))
    return shifted / shifted.sum(axis=-1, keepdims=True)


def _activate(kind: Activation, z: np.ndarray) -> np.ndarray:
    match kind:
        case Activation.SIGMOID:
            return 1.0 / (1.0 + np.exp(-z))
        case Activation.TANH:
            return np.tanh(z)
        case Activation.RELU:
            return np.maximum(z, 0.0)
        case Activation.LINEAR:
            return z
        case Activation.SOFTMAX:
            return softmax(z)


def _activation_vjp(kind: Activation, z: np.ndarray, a: np.ndarray, upstream: np.ndarray) -> np.ndarray:
    """∂L/∂z from ∂L/∂a, row by row."""
    match kind:
        case Activation.SIGMOID:
            return upstream * a * (1.0 - a)
        case Activation.TANH:
            return upstream * (1.0 - a * a)
        case Activation.RELU:
            return upstream * (z > 0)
        case Activation.LINEAR:
            return upstream
        case Activation.SOFTMAX:
            # [diag(ŷ) − ŷŷᵀ] ∂L/∂ŷ per row
            return a * (upstream - np.sum(a * upstream, axis=-1, keepdims=True))


@dataclass(frozen=True, slots=True, eq=False)
class MLP:
    weights: tuple[np.ndarray, ...]
    biases: tuple[np.ndarray, ...]
    hidden: Activation = Activation.SIGMOID
    output: Activation = Activation.SIGMOID

    def __post_init__(self) -> None:
        if not self.weights or len(self.weights) != len(self.biases):
            raise ValidationError("MLP needs one bias per weight matrix")
        for i, (w, b) in enumerate(zip(self.weights, self.biases, strict=True)):
            if w.ndim != 2 or b.shape != (w.shape[0],):
                raise ValidationError(f"layer {i}: weight {w.shape} and bias {b.shape} disagree")
            if i and w.shape[1] != self.weights[i - 1].shape[0]:
                raise ValidationError(f"layer {i} expects {w.shape[1]} inputs, "
                                      f"previous layer gives {self.weights[i - 1].shape[0]}")

    @property
    def sizes(self) -> list[int]:
        return [self.weights[0].shape[1], *(w.shape[0] for w in self.weights)]

    @property
    def num_params(self) -> int:
        return sum(w.size + b.size for w, b in zip(self.weights, self.biases, strict=True))

    def flat(self) -> np.ndarray:
        parts = []
        for w, b in zip(self.weights, self.biases, strict=True):
            parts += [w.reshape(-1), b]
        return np.concatenate(parts)

    def with_flat(self, params: ArrayLike) -> MLP:
        p = np.asarray(params, dtype=float).reshape(-1)
        if p.size != self.num_params:
            raise ArgumentError(f"expected {self.num_params} parameters, got {p.size}")
        weights, biases, at = [], [], 0
        for w, b in zip(self.weights, self.biases, strict=True):
            weights.append(p[at : at + w.size].reshape(w.shape))
            at += w.size
            biases.append(p[at : at + b.size].copy())
            at += b.size
        return MLP(tuple(weights), tuple(biases), self.hidden, self.output)


def init_mlp(
    sizes: Sequence[int],
    seed: Seed | None = None,
    hidden: Activation | str = Activation.SIGMOID,
    output: Activation | str = Activation.SIGMOID,
) -> MLP:
    """Glorot-uniform weights, zero biases."""
    if len(sizes) < 2 or any(s < 1 for s in sizes):
        raise ArgumentError(f"invalid layer sizes {list(sizes)}")
    rng = as_generator(seed)
    weights, biases = [], []
    for fan_in, fan_out in zip(sizes, sizes[1:], strict=False):
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-limit, limit, size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out))
    return MLP(tuple(weights), tuple(biases), Activation(hidden), Activation(output))


def _inputs(mlp: MLP, x: ArrayLike) -> np.ndarray:
    batch = np.atleast_2d(np.asarray(x, dtype=float))
    if batch.shape[1] != mlp.sizes[0]:
        raise ArgumentError(f"network takes {mlp.sizes[0]} inputs, got {batch.shape[1]}")
    return batch


def _forward_cache(mlp: MLP, batch: np.ndarray) -> tuple[list[np.ndarray], list[np.ndarray]]:
    acts, pre = [batch], []
    last = len(mlp.weights) - 1
    for i, (w, b) in enumerate(zip(mlp.weights, mlp.biases, strict=True)):
        z = acts[-1] @ w.T + b
        pre.append(z)
        acts.append(_activate(mlp.output if i == last else mlp.hidden, z))
    return acts, pre


def mlp_forward(mlp: MLP, x: ArrayLike) -> np.ndarray:
    acts, _ = _forward_cache(mlp, _inputs(mlp, x))
    return acts[-1]


def loss_value(loss: Loss | str, y_hat: ArrayLike, y: ArrayLike) -> float:
    p = np.atleast_2d(np.asarray(y_hat, dtype=float))
    t = np.asarray(y, dtype=float).reshape(p.shape)
    match Loss(loss):
        case Loss.MSE:
            return float(0.5 * np.sum((p - t) ** 2) / p.shape[0])
        case Loss.CROSS_ENTROPY:
            return float(-np.sum(t * np.log(np.clip(p, PROBABILITY_FLOOR, None))) / p.shape[0])
        case Loss.BCE:
            q = np.clip(p, PROBABILITY_FLOOR, 1.0 - PROBABILITY_FLOOR)
            return float(-np.sum(t * np.log(q) + (1 - t) * np.log(1 - q)) / p.shape[0])


def _loss_grad(loss: Loss, p: np.ndarray, t: np.ndarray) -> np.ndarray:
    n = p.shape[0]
    match loss:
        case Loss.MSE:
            return (p - t) / n
        case Loss.CROSS_ENTROPY:
            return -t / np.clip(p, PROBABILITY_FLOOR, None) / n
        case Loss.BCE:
            q = np.clip(p, PROBABILITY_FLOOR, 1.0 - PROBABILITY_FLOOR)
            return (q - t) / (q * (1 - q)) / n


@dataclass(frozen=True, slots=True, eq=False)
class MLPGradients:
    loss: float
    weights: tuple[np.ndarray, ...]
    biases: tuple[np.ndarray, ...]
    inputs: np.ndarray

    def flat(self) -> np.ndarray:
        parts = []
        for w, b in zip(self.weights, self.biases, strict=True):
            parts += [w.reshape(-1), b]
        return np.concatenate(parts)


def mlp_backprop(mlp: MLP, x: ArrayLike, y: ArrayLike, loss: Loss | str = Loss.MSE) -> MLPGradients:
    """Loss and its gradients with respect to every weight, bias and input."""
    kind = Loss(loss)
    batch = _inputs(mlp, x)
    acts, pre = _forward_cache(mlp, batch)
    p = acts[-1]
    t = np.asarray(y, dtype=float).reshape(p.shape)
    fused = (kind is Loss.BCE and mlp.output is Activation.SIGMOID) or (
        kind is Loss.CROSS_ENTROPY and mlp.output is Activation.SOFTMAX
    )
    if fused:
        delta = (p - t) / p.shape[0]
    else:
        delta = _activation_vjp(mlp.output, pre[-1], p, _loss_grad(kind, p, t))
    d_w: list[np.ndarray] = []
    d_b: list[np.ndarray] = []
    for i in range(len(mlp.weights) - 1, -1, -1):
        d_w.append(delta.T @ acts[i])
        d_b.append(delta.sum(axis=0))
        upstream = delta @ mlp.weights[i]
        if i:
            delta = _activation_vjp(mlp.hidden, pre[i - 1], acts[i], upstream)
    return MLPGradients(loss_value(kind, p, t), tuple(reversed(d_w)), tuple(reversed(d_b)), upstream)


def mlp_train_step(
    mlp: MLP, optimizer: Optimizer, x: ArrayLike, y: ArrayLike, loss: Loss | str = Loss.BCE,
) -> tuple[MLP, float]:
    """One optimizer update; returns the new network and the pre-update loss."""
    grads = mlp_backprop(mlp, x, y, loss)
    return mlp.with_flat(optimizer.step(mlp.flat(), grads.flat())), grads.loss
