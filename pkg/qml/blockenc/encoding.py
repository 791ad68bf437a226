"""
Block-encoding records and their construction bookkeeping.

Responsibilities:
- BlockEncoding / StateEncoding records with the unitarity and scale checks
- The one-ancilla unitary dilation used to embed sub-normalized blocks
- Provenance trees and query counting over them
- Compaction of composites that outgrow the configured qubit limit

Layout: ancilla qubits are the leftmost factors, so the encoded block is
alpha · U[:D, :D] with D = target_dim.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import ArrayLike
from scipy import linalg

from qml.config import active_config
from qml.constants import IMAG_TOL, UNITARY_TOL
from qml.errors import ArgumentError, ValidationError
from qml.linalg import (
    ComplexArray,
    as_complex,
    ceil_qubits,
    complete_unitary,
    dagger,
    is_unitary,
    pad_square,
    pad_vector,
    qubits_for_dim,
    spectral_norm,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Provenance
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Provenance:
    """One node of the construction trace.

    ``uses[i]`` is how many times parent i is queried by this construction;
    ``formula_anc`` is the ancilla count the textbook construction would
    need, which may differ from the emulated unitary after compaction.
    """

    op: str
    parents: tuple[Provenance, ...] = ()
    uses: tuple[int, ...] = ()
    label: str | None = None
    formula_anc: int = 0
    epsilon: float = 0.0
    notes: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.uses) != len(self.parents):
            object.__setattr__(self, "uses", (1,) * len(self.parents))


def count_queries(node: Provenance | BlockEncoding) -> dict[str, int]:
    """Uses of each labeled input encoding, multiplied along the trace."""
    prov = node.provenance if isinstance(node, BlockEncoding) else node
    memo: dict[int, Counter[str]] = {}

    def walk(p: Provenance) -> Counter[str]:
        key = id(p)
        if key in memo:
            return memo[key]
        if not p.parents:
            total: Counter[str] = Counter({p.label: 1}) if p.label else Counter()
        else:
            total = Counter()
            for parent, k in zip(p.parents, p.uses, strict=True):
                for name, n in walk(parent).items():
                    total[name] += k * n
        memo[key] = total
        return total

    return dict(walk(prov))


# ---------------------------------------------------------------------------
# Records
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True, eq=False)
class BlockEncoding:
    """(alpha, anc)-block-encoding: alpha · (⟨0|^anc ⊗ I) U (|0⟩^anc ⊗ I) = A."""

    unitary: ComplexArray
    alpha: float
    anc: int
    target_dim: int
    provenance: Provenance = field(default_factory=lambda: Provenance("raw"))

    def __post_init__(self) -> None:
        u = as_complex(self.unitary)
        qubits_for_dim(self.target_dim)
        if u.shape != (self.target_dim * 2**self.anc,) * 2:
            raise ValidationError(
                f"unitary shape {u.shape} does not match anc={self.anc}, D={self.target_dim}"
            )
        if self.alpha < 0 or not math.isfinite(self.alpha):
            raise ValidationError(f"scale factor must be finite and non-negative, got {self.alpha}")
        if not is_unitary(u, UNITARY_TOL):
            raise ValidationError(f"{self.provenance.op}: encoding matrix is not unitary")
        object.__setattr__(self, "unitary", u)
        object.__setattr__(self, "alpha", float(self.alpha))

    @property
    def num_qubits(self) -> int:
        return qubits_for_dim(self.target_dim)

    @property
    def total_qubits(self) -> int:
        return self.anc + self.num_qubits

    @property
    def block(self) -> ComplexArray:
        """The unscaled corner block A/alpha."""
        return self.unitary[: self.target_dim, : self.target_dim]

    @property
    def epsilon(self) -> float:
        return self.provenance.epsilon

    def extract(self) -> ComplexArray:
        return self.alpha * self.block


def extract(be: BlockEncoding) -> ComplexArray:
    return be.extract()


@dataclass(frozen=True, slots=True, eq=False)
class StateEncoding:
    """alpha · (⟨0^anc| ⊗ I) U |0^{anc+N}⟩ = target state."""

    unitary: ComplexArray
    alpha: float
    anc: int
    target_dim: int
    epsilon: float = 0.0
    label: str | None = None

    def __post_init__(self) -> None:
        u = as_complex(self.unitary)
        if u.shape != (self.target_dim * 2**self.anc,) * 2 or not is_unitary(u, UNITARY_TOL):
            raise ValidationError("state encoding is not a unitary of the declared shape")
        object.__setattr__(self, "unitary", u)

    def state(self) -> ComplexArray:
        return self.alpha * self.unitary[: self.target_dim, 0]


# ---------------------------------------------------------------------------
# Dilation and compaction
# ---------------------------------------------------------------------------

def dilate(block: ArrayLike) -> ComplexArray:
    """[[B, √(I−BB†)], [√(I−B†B), −B†]] for a contraction B."""
    b = as_complex(block)
    w, sigma, vh = linalg.svd(b)
    if sigma.size and sigma[0] > 1.0 + UNITARY_TOL:
        raise ValidationError(f"block has norm {sigma[0]:.12g} > 1 and cannot be dilated")
    comp = np.sqrt(np.clip(1.0 - sigma**2, 0.0, None))
    left = (w * comp) @ dagger(w)
    v = dagger(vh)
    right = (v * comp) @ vh
    return np.block([[b, left], [right, -dagger(b)]])


def dilated_encoding(target: ArrayLike, alpha: float, provenance: Provenance) -> BlockEncoding:
    """One-ancilla encoding of *target* at scale *alpha*."""
    a = as_complex(target)
    dim = a.shape[0]
    if alpha <= 0:
        if np.any(np.abs(a) > 0):
            raise ValidationError("a nonzero block needs a positive scale factor")
        alpha = 1.0
    return BlockEncoding(dilate(a / alpha), alpha, 1, dim, provenance)


def compose(
    total_qubits: int,
    build: Callable[[], ComplexArray],
    target: Callable[[], ComplexArray],
    alpha: float,
    anc: int,
    dim: int,
    provenance: Provenance,
) -> BlockEncoding:
    """Build the explicit composed unitary, or re-dilate its target when it would be too large."""
    limit = active_config().compose_qubit_limit
    if total_qubits <= limit:
        return BlockEncoding(build(), alpha, anc, dim, provenance)
    logger.debug(
        "%s: %d qubits exceeds compose limit %d, re-dilating the target block",
        provenance.op, total_qubits, limit,
    )
    return dilated_encoding(target(), alpha, provenance)


# ---------------------------------------------------------------------------
# Leaf constructors
# ---------------------------------------------------------------------------

def be_from_unitary(u: ArrayLike, label: str | None = None) -> BlockEncoding:
    """Any unitary is a (1, 0)-encoding of itself."""
    m = as_complex(u)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ArgumentError(f"expected a square matrix, got shape {m.shape}")
    if not is_unitary(m, UNITARY_TOL):
        raise ValidationError("matrix is not unitary")
    return BlockEncoding(m, 1.0, 0, m.shape[0], Provenance("unitary", label=label))


def be_from_matrix(a: ArrayLike, alpha: float | None = None, label: str | None = None) -> BlockEncoding:
    """One-ancilla dilation of *a* padded to a power-of-two square.

    *alpha* defaults to the spectral norm (1 for the zero matrix).
    """
    m = as_complex(a)
    if m.ndim == 1:
        m = m.reshape(1, -1)
    dim = 2 ** ceil_qubits(max(m.shape))
    padded = pad_square(m, dim)
    norm = spectral_norm(padded)
    scale = (norm if norm > 0 else 1.0) if alpha is None else float(alpha)
    if norm > scale * (1.0 + 1e-12) + 1e-12:
        raise ValidationError(f"scale factor {scale} is below the spectral norm {norm}")
    return dilated_encoding(padded, scale, Provenance("matrix", label=label, formula_anc=1))


def state_encode(x: ArrayLike, label: str | None = None) -> StateEncoding:
    """(‖x‖, 0)-state-encoding: a unitary whose first column is x/‖x‖."""
    vec = as_complex(x).reshape(-1)
    norm = float(np.linalg.norm(vec))
    if vec.size == 0 or norm == 0.0:
        raise ArgumentError("cannot state-encode a zero vector")
    dim = 2 ** ceil_qubits(vec.size)
    u = complete_unitary(pad_vector(vec / norm, dim))
    return StateEncoding(u, norm, 0, dim, label=label)


def require_real(a: ComplexArray, what: str) -> np.ndarray:
    residue = float(np.max(np.abs(a.imag))) if a.size else 0.0
    if residue > IMAG_TOL:
        raise ValidationError(f"{what} must be real (imaginary residue {residue:.3g})")
    return np.real(a)


def check_same_dim(encodings: Sequence[BlockEncoding]) -> int:
    dims = {be.target_dim for be in encodings}
    if len(dims) != 1:
        raise ArgumentError(f"encodings have different target dimensions {sorted(dims)}")
    return dims.pop()
