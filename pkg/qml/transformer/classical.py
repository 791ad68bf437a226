"""
Single-head, single-block Transformer reference in double precision.

Transformer(S, j) = LN(FFN(y), y) with y = LN(Attention(S, j), S_j), where
LN(g, s) = γ(g + s − mean)/ς + β with the population RMS ς, and
FFN(y) = M₂·GELU(M₁·y + b₁) + b₂ in column convention (M₁ is d'×d).
Token indices j are 1-based.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import ArrayLike

from qml.blockenc.polynomials import gelu
from qml.constants import DEGENERATE_NORM
from qml.errors import ArgumentError, DegenerateInputError, ValidationError
from qml.rng import Seed, as_generator

logger = logging.getLogger(__name__)


def _real_matrix(a: ArrayLike, what: str) -> np.ndarray:
    m = np.asarray(a, dtype=float)
    if m.ndim != 2:
        raise ValidationError(f"{what} must be a matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError(f"{what} has non-finite entries")
    return m


@dataclass(frozen=True, slots=True, eq=False)
class TokenSequence:
    """ℓ×d embeddings; padded() appends zero rows up to a power of two."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = _real_matrix(self.matrix, "token matrix")
        if m.shape[0] < 1 or m.shape[1] < 1:
            raise ValidationError("token matrix is empty")
        object.__setattr__(self, "matrix", m)

    @property
    def length(self) -> int:
        return self.matrix.shape[0]

    @property
    def width(self) -> int:
        return self.matrix.shape[1]

    def padded(self) -> tuple[np.ndarray, np.ndarray]:
        """(padded matrix, boolean flags marking padding rows)."""
        rows = 1 << max(self.length - 1, 0).bit_length()
        out = np.zeros((rows, self.width))
        out[: self.length] = self.matrix
        flags = np.arange(rows) >= self.length
        return out, flags


@dataclass(frozen=True, slots=True, eq=False)
class WeightSet:
    w_q: np.ndarray
    w_k: np.ndarray
    w_v: np.ndarray
    m1: np.ndarray
    m2: np.ndarray
    b1: np.ndarray
    b2: np.ndarray
    gamma: float = 1.0
    beta: float = 0.0

    def __post_init__(self) -> None:
        for name in ("w_q", "w_k", "w_v", "m1", "m2"):
            object.__setattr__(self, name, _real_matrix(getattr(self, name), name))
        d = self.w_q.shape[0]
        if any(w.shape != (d, d) for w in (self.w_q, self.w_k, self.w_v)):
            raise ValidationError("W_q, W_k and W_v must all be d×d")
        d_ff = self.m1.shape[0]
        if self.m1.shape != (d_ff, d) or self.m2.shape != (d, d_ff):
            raise ValidationError(f"M₁ must be d'×d and M₂ d×d'; got {self.m1.shape}, {self.m2.shape}")
        b1 = np.asarray(self.b1, dtype=float).reshape(-1)
        b2 = np.asarray(self.b2, dtype=float).reshape(-1)
        if b1.size != d_ff or b2.size != d:
            raise ValidationError(f"bias lengths {b1.size}, {b2.size} do not match d'={d_ff}, d={d}")
        object.__setattr__(self, "b1", b1)
        object.__setattr__(self, "b2", b2)

    @property
    def d(self) -> int:
        return self.w_q.shape[0]

    @property
    def d_ff(self) -> int:
        return self.m1.shape[0]

    @classmethod
    def random(cls, d: int, d_ff: int | None = None, seed: Seed | None = None,
               bias: bool = True) -> WeightSet:
        """Gaussian weights with 1/√fan-in scaling; d' defaults to 4d."""
        rng = as_generator(seed)
        f = 4 * d if d_ff is None else d_ff
        def mat(rows: int, cols: int) -> np.ndarray:
            return rng.standard_normal((rows, cols)) / math.sqrt(cols)
        b1 = rng.standard_normal(f) * 0.1 if bias else np.zeros(f)
        b2 = rng.standard_normal(d) * 0.1 if bias else np.zeros(d)
        return cls(mat(d, d), mat(d, d), mat(d, d), mat(f, d), mat(d, f), b1, b2)

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> WeightSet:
        d = len(raw["W_q"])
        m1 = raw.get("M_1")
        if m1 is None:
            raise ArgumentError("instance is missing M_1")
        d_ff = len(m1)
        return cls(
            np.asarray(raw["W_q"], dtype=float), np.asarray(raw["W_k"], dtype=float),
            np.asarray(raw["W_v"], dtype=float), np.asarray(m1, dtype=float),
            np.asarray(raw["M_2"], dtype=float),
            np.asarray(raw.get("b_1", [0.0] * d_ff), dtype=float),
            np.asarray(raw.get("b_2", [0.0] * d), dtype=float),
            float(raw.get("gamma", 1.0)), float(raw.get("beta", 0.0)),
        )


# ---------------------------------------------------------------------------
# Building blocks
# ---------------------------------------------------------------------------

def softmax(z: ArrayLike) -> np.ndarray:
    """Row-wise softmax; −∞ entries get weight 0, an all-−∞ row is degenerate."""
    a = np.atleast_2d(np.asarray(z, dtype=float))
    top = a.max(axis=-1, keepdims=True)
    if np.any(~np.isfinite(top)):
        raise DegenerateInputError("softmax row has no finite logit")
    e = np.exp(a - top)
    return e / e.sum(axis=-1, keepdims=True)


def causal_mask(length: int) -> np.ndarray:
    """0 on and below the diagonal, −∞ above it."""
    m = np.zeros((length, length))
    m[np.triu_indices(length, k=1)] = -np.inf
    return m


def attention_weights(
    s: ArrayLike, weights: WeightSet, alpha0: float, masked: bool = False,
) -> np.ndarray:
    if alpha0 <= 0:
        raise ArgumentError(f"attention scale must be positive, got {alpha0}")
    tokens = TokenSequence(np.asarray(s, dtype=float)).matrix
    if tokens.shape[1] != weights.d:
        raise ArgumentError(f"tokens have width {tokens.shape[1]}, weights expect {weights.d}")
    q, k = tokens @ weights.w_q, tokens @ weights.w_k
    logits = q @ k.T / alpha0
    if masked:
        logits = logits + causal_mask(tokens.shape[0])
    return softmax(logits)


def classical_attention(
    s: ArrayLike, weights: WeightSet, alpha0: float, masked: bool = False,
) -> np.ndarray:
    """softmax(QKᵀ/α₀ [+ mask]) V."""
    tokens = np.asarray(s, dtype=float)
    return attention_weights(tokens, weights, alpha0, masked) @ (tokens @ weights.w_v)


def layer_norm_residual(
    g: ArrayLike, s: ArrayLike, gamma: float = 1.0, beta: float = 0.0,
) -> np.ndarray:
    """γ(g + s − mean)/ς + β with ς the population RMS of the centered sum."""
    gv = np.asarray(g, dtype=float).reshape(-1)
    sv = np.asarray(s, dtype=float).reshape(-1)
    if gv.size != sv.size:
        raise ArgumentError(f"residual inputs differ in length ({gv.size} vs {sv.size})")
    centered = gv + sv - np.mean(gv + sv)
    sigma = math.sqrt(float(np.mean(centered**2)))
    if sigma < DEGENERATE_NORM:
        raise DegenerateInputError("layer norm of a constant vector")
    return gamma * centered / sigma + beta


def ffn(x: ArrayLike, weights: WeightSet) -> np.ndarray:
    """M₂·GELU(M₁·x + b₁) + b₂."""
    v = np.asarray(x, dtype=float).reshape(-1)
    if v.size != weights.d:
        raise ArgumentError(f"FFN input has length {v.size}, expected {weights.d}")
    return weights.m2 @ gelu(weights.m1 @ v + weights.b1) + weights.b2


@dataclass(frozen=True, slots=True, eq=False)
class ClassicalTrace:
    attention: np.ndarray
    layer_norm: np.ndarray
    ffn: np.ndarray
    output: np.ndarray


def classical_transformer_trace(
    s: ArrayLike, j: int, weights: WeightSet, alpha0: float, masked: bool = False,
) -> ClassicalTrace:
    tokens = TokenSequence(np.asarray(s, dtype=float)).matrix
    if not 1 <= j <= tokens.shape[0]:
        raise ArgumentError(f"token index {j} out of range 1..{tokens.shape[0]}")
    row = classical_attention(tokens, weights, alpha0, masked)[j - 1]
    y = layer_norm_residual(row, tokens[j - 1], weights.gamma, weights.beta)
    f = ffn(y, weights)
    out = layer_norm_residual(f, y, weights.gamma, weights.beta)
    return ClassicalTrace(row, y, f, out)


def classical_transformer_row(
    s: ArrayLike, j: int, weights: WeightSet, alpha0: float, masked: bool = False,
) -> np.ndarray:
    return classical_transformer_trace(s, j, weights, alpha0, masked).output
