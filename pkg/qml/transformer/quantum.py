"""
Quantum Transformer pipeline emulated on block encodings.

Responsibilities:
- build_input_encodings: labeled encodings of S, W_q, W_k, W_v, M₁, M₂ (and biases)
  on one shared system dimension D
- Stage constructions: softmax row state, attention row, residual + layer
  norm, GELU feed-forward and the final residual + layer norm
- RowState records carrying the normalization trace of every stage
- A per-stage construction count of input-encoding uses

Two modes: "exact" applies scalar exp/GELU element-wise inside the emulation;
"poly" uses the truncated polynomial approximations at a given ε.  Token
indices j are 1-based, as in the classical reference.
"""

from __future__ import annotations

import enum
import logging
import math
from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike

from qml.blockenc.algebra import (
    be_hadamard_product,
    be_linear_combination,
    be_product,
    be_product_chain,
    be_transpose,
)
from qml.blockenc.encoding import (
    BlockEncoding,
    be_from_matrix,
    count_queries,
    require_real,
    state_encode,
)
from qml.blockenc.polynomials import gelu, poly_approx_exp, poly_approx_gelu
from qml.blockenc.transforms import (
    be_diag_from_state,
    be_elementwise_map,
    be_elementwise_poly,
    be_projector,
    be_row_mask,
)
from qml.constants import DEGENERATE_NORM, NORM_TOL
from qml.errors import ArgumentError, DegenerateInputError, ValidationError
from qml.linalg import ceil_qubits, pad_square
from qml.transformer.classical import TokenSequence, WeightSet

logger = logging.getLogger(__name__)


class Mode(enum.Enum):
    EXACT = "exact"
    POLY = "poly"


# ---------------------------------------------------------------------------
# Records
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True, eq=False)
class RowState:
    """Unit-norm real amplitudes plus the factors that rescale them.

    ``scale`` (the product of the recorded factors) times ``amplitudes`` is
    the unnormalized vector the stage encodes.
    """

    amplitudes: np.ndarray
    factors: tuple[tuple[str, float], ...] = ()
    stage: str = ""

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=float).reshape(-1)
        if abs(float(np.linalg.norm(amps)) - 1.0) > NORM_TOL:
            raise ValidationError(f"{self.stage} row state is not normalized")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def scale(self) -> float:
        return math.prod(v for _, v in self.factors)

    def reconstruct(self) -> np.ndarray:
        return self.scale * self.amplitudes


@dataclass(frozen=True, slots=True)
class StageReport:
    stage: str
    uses: Mapping[str, int]
    degree: int
    amplitude: float
    rounds: int

    def as_dict(self) -> dict[str, object]:
        return {"stage": self.stage, "uses": dict(self.uses), "degree": self.degree,
                "amplitude": self.amplitude, "rounds": self.rounds}


@dataclass(frozen=True, slots=True)
class ResourceReport:
    """Construction count: input-encoding uses per stage, with prepared
    states from earlier stages expanded by their amplification rounds."""

    stages: tuple[StageReport, ...]
    totals: Mapping[str, int] = field(default_factory=dict)

    def as_dict(self) -> dict[str, object]:
        return {"kind": "construction count", "stages": [s.as_dict() for s in self.stages],
                "totals": dict(self.totals)}


def _expanded_totals(stages: tuple[StageReport, ...]) -> dict[str, int]:
    """Replace every use of an earlier stage's state by that stage's total cost."""
    cost: dict[str, dict[str, int]] = {}
    for st in stages:
        total: dict[str, int] = {}
        for name, n in st.uses.items():
            if name in cost:
                for leaf, m in cost[name].items():
                    total[leaf] = total.get(leaf, 0) + n * m
            else:
                total[name] = total.get(name, 0) + n
        cost[st.stage] = {k: v * st.rounds for k, v in total.items()}
    return cost[stages[-1].stage] if stages else {}


def _row_state(vector: np.ndarray, alpha: float, stage: str) -> RowState:
    norm = float(np.linalg.norm(vector))
    if norm < DEGENERATE_NORM:
        raise DegenerateInputError(f"{stage}: encoded row has zero norm")
    return RowState(vector / norm, (("alpha", alpha), ("amplitude", norm / alpha)), stage)


def _report(stage: str, enc: BlockEncoding, state: RowState, degree: int = 0) -> StageReport:
    amplitude = dict(state.factors)["amplitude"]
    rounds = max(1, math.ceil(1.0 / amplitude - 1e-12))
    return StageReport(stage, count_queries(enc), degree, amplitude, rounds)


# ---------------------------------------------------------------------------
# Inputs
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True, eq=False)
class InputEncodings:
    s: BlockEncoding
    w_q: BlockEncoding
    w_k: BlockEncoding
    w_v: BlockEncoding
    m1: BlockEncoding
    m2: BlockEncoding
    b1: BlockEncoding | None
    b2: BlockEncoding | None
    length: int
    width: int
    width_ff: int

    @property
    def dim(self) -> int:
        return self.s.target_dim

    @property
    def alpha0(self) -> float:
        """α_s² α_wq α_wk: the scale of the encoded QKᵀ."""
        return self.s.alpha**2 * self.w_q.alpha * self.w_k.alpha


def _column(v: ArrayLike, dim: int, label: str) -> BlockEncoding:
    """Encoding of the matrix whose first column is *v*."""
    vec = np.asarray(v, dtype=float).reshape(-1)
    m = np.zeros((dim, dim))
    m[: vec.size, 0] = vec
    return be_from_matrix(m, label=label)


def _padded(a: np.ndarray, dim: int, label: str) -> BlockEncoding:
    return be_from_matrix(pad_square(a, dim), label=label)


def build_input_encodings(s: ArrayLike, weights: WeightSet) -> InputEncodings:
    """Dilation encodings on D = 2^⌈log₂ max(ℓ, d, d')⌉, at spectral-norm scale."""
    tokens = TokenSequence(np.asarray(s, dtype=float))
    if tokens.width != weights.d:
        raise ArgumentError(f"tokens have width {tokens.width}, weights expect {weights.d}")
    dim = 2 ** ceil_qubits(max(tokens.length, weights.d, weights.d_ff, 2))
    b1 = _column(weights.b1, dim, "b1") if np.any(weights.b1) else None
    b2 = _column(weights.b2, dim, "b2") if np.any(weights.b2) else None
    enc = InputEncodings(
        _padded(tokens.matrix, dim, "S"), _padded(weights.w_q, dim, "Wq"),
        _padded(weights.w_k, dim, "Wk"), _padded(weights.w_v, dim, "Wv"),
        _padded(weights.m1, dim, "M1"), _padded(weights.m2, dim, "M2"),
        b1, b2, tokens.length, weights.d, weights.d_ff,
    )
    logger.debug("input encodings on D=%d: α_s=%.4g, α0=%.4g", dim, enc.s.alpha, enc.alpha0)
    return enc


def _check_row(j: int, length: int) -> int:
    if not 1 <= j <= length:
        raise ArgumentError(f"token index {j} out of range 1..{length}")
    return j - 1


# ---------------------------------------------------------------------------
# Softmax and attention
# ---------------------------------------------------------------------------

def score_encoding(inputs: InputEncodings) -> BlockEncoding:
    """S W_q W_kᵀ Sᵀ at scale α₀."""
    return be_product_chain([inputs.s, inputs.w_q, be_transpose(inputs.w_k),
                             be_transpose(inputs.s)])


def _key_mask(dim: int, length: int, row: int, masked: bool) -> np.ndarray:
    keys = np.arange(dim) < length
    if masked:
        keys &= np.arange(dim) <= row
    out = np.zeros((dim, dim))
    out[:, keys] = 1.0
    return out


@dataclass(frozen=True, slots=True, eq=False)
class SoftmaxResult:
    state: RowState
    encoding: BlockEncoding
    degree: int


def q_softmax_state(
    be_a: BlockEncoding,
    j: int,
    length: int | None = None,
    masked: bool = False,
    mode: Mode | str = Mode.EXACT,
    epsilon: float = 1e-6,
) -> SoftmaxResult:
    """Row j of exp∘(A/2α) restricted to admissible keys, as a unit state over ℓ keys.

    Its squared amplitudes are softmax(A/α)_j.
    """
    mode = Mode(mode)
    dim = be_a.target_dim
    ell = dim if length is None else length
    row = _check_row(j, ell)
    mask = _key_mask(dim, ell, row, masked)
    if not np.any(mask[row]):
        raise DegenerateInputError("every key of the row is masked")
    if mode is Mode.EXACT:
        enc = be_elementwise_map(
            be_a, lambda t: mask * np.exp(t / 2), math.exp(0.5), row_restrict=row, label="exp",
        )
        degree = 1
    else:
        poly = poly_approx_exp(epsilon, rate=0.5)
        enc = be_elementwise_poly(be_a, poly, row_restrict=row)
        if not np.all(mask):
            enc = be_hadamard_product(enc, be_from_matrix(mask))
        degree = poly.degree
    vec = require_real(enc.extract()[row, :ell], "softmax row")
    return SoftmaxResult(_row_state(vec, enc.alpha, "softmax"), enc, degree)


@dataclass(frozen=True, slots=True, eq=False)
class AttentionResult:
    state: RowState
    encoding: BlockEncoding
    weights: np.ndarray
    alpha0: float
    reports: tuple[StageReport, ...]


def q_attention_row(
    inputs: InputEncodings,
    j: int,
    masked: bool = False,
    mode: Mode | str = Mode.EXACT,
    epsilon: float = 1e-6,
) -> AttentionResult:
    """State ∝ (softmax(QKᵀ/α₀)V)_j with α₀ = α_s²α_wqα_wk.

    √p is loaded as diag(√p), squared by a Hadamard product, and the row
    mask √D|j⟩⟨+| sums the weighted value rows.
    """
    row = _check_row(j, inputs.length)
    be_a = score_encoding(inputs)
    soft = q_softmax_state(be_a, j, inputs.length, masked, mode, epsilon)
    amps = np.zeros(inputs.dim)
    amps[: inputs.length] = soft.state.amplitudes
    sqrt_p = state_encode(amps, label="softmax")
    diag = be_diag_from_state(sqrt_p)
    diag_p = be_hadamard_product(diag, diag)
    values = be_product(inputs.s, inputs.w_v)
    enc = be_product_chain([be_row_mask(values.num_qubits, row), diag_p, values])
    vec = require_real(enc.extract()[row, : inputs.width], "attention row")
    state = _row_state(vec, enc.alpha, "attention")
    reports = (_report("softmax", soft.encoding, soft.state, soft.degree),
               _report("attention", enc, state))
    return AttentionResult(state, enc, soft.state.amplitudes**2, inputs.alpha0, reports)


# ---------------------------------------------------------------------------
# Residual + layer norm
# ---------------------------------------------------------------------------

def centering_projector(dim: int, width: int) -> np.ndarray:
    """I_d − 11ᵀ/d on the first *width* coordinates, zero elsewhere."""
    p = np.zeros((dim, dim))
    p[:width, :width] = np.eye(width) - np.full((width, width), 1.0 / width)
    return p


@dataclass(frozen=True, slots=True, eq=False)
class StageResult:
    state: RowState
    encoding: BlockEncoding
    report: StageReport


def q_layernorm_state(be_g: BlockEncoding, be_s: BlockEncoding, j: int, width: int) -> StageResult:
    """Row j of (G + S)·C: the centered residual, normalized by its ℓ₂ norm."""
    row = _check_row(j, be_g.target_dim)
    summed = be_linear_combination([be_g, be_s], [1.0, 1.0])
    enc = be_product(summed, be_projector(centering_projector(be_g.target_dim, width)))
    vec = require_real(enc.extract()[row, :width], "residual row")
    state = _row_state(vec, enc.alpha, "layer_norm")
    return StageResult(state, enc, _report("layer_norm", enc, state))


# ---------------------------------------------------------------------------
# Feed-forward
# ---------------------------------------------------------------------------

def q_ffn_state(
    row_state: RowState,
    be_m1: BlockEncoding,
    be_m2: BlockEncoding,
    width: int,
    kappa: float = 1.0,
    be_b1: BlockEncoding | None = None,
    be_b2: BlockEncoding | None = None,
    mode: Mode | str = Mode.EXACT,
    epsilon: float = 1e-6,
    source: str = "state",
) -> StageResult:
    """State ∝ M₂·GELU(M₁·κψ + b₁) + b₂, vectors carried as first columns."""
    mode = Mode(mode)
    if kappa <= 0:
        raise ArgumentError(f"kappa must be positive, got {kappa}")
    dim = be_m1.target_dim
    x = _column(kappa * row_state.amplitudes, dim, source)
    hidden = be_product(be_m1, x)
    if be_b1 is not None:
        hidden = be_linear_combination([hidden, be_b1], [1.0, 1.0])
    alpha_h = hidden.alpha
    if mode is Mode.EXACT:
        activated = be_elementwise_map(hidden, lambda t: gelu(alpha_h * t), alpha_h, label="gelu")
        degree = 1
    else:
        poly = poly_approx_gelu(alpha_h, 1.0, epsilon)
        activated = be_elementwise_poly(hidden, poly)
        degree = poly.degree
    out = be_product(be_m2, activated)
    if be_b2 is not None:
        out = be_linear_combination([out, be_b2], [1.0, 1.0])
    vec = require_real(out.extract()[:width, 0], "feed-forward output")
    state = _row_state(vec, out.alpha, "ffn")
    return StageResult(state, out, _report("ffn", out, state, degree))


def q_output_layernorm(
    ffn: StageResult, ln_state: RowState, kappa: float, width: int, source: str = "layer_norm",
) -> StageResult:
    """C·(f + κψ): the second residual with layer norm, in column convention."""
    dim = ffn.encoding.target_dim
    residual = be_linear_combination(
        [ffn.encoding, _column(kappa * ln_state.amplitudes, dim, source)], [1.0, 1.0])
    enc = be_product(be_projector(centering_projector(dim, width)), residual)
    vec = require_real(enc.extract()[:width, 0], "output residual")
    state = _row_state(vec, enc.alpha, "output")
    return StageResult(state, enc, _report("output", enc, state))


# ---------------------------------------------------------------------------
# End to end
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True, eq=False)
class TransformerRun:
    state: RowState
    stages: Mapping[str, RowState]
    alpha0: float
    report: ResourceReport


def q_transformer_row(
    inputs: InputEncodings,
    j: int,
    mode: Mode | str = Mode.EXACT,
    epsilon: float = 1e-6,
    masked: bool = False,
) -> TransformerRun:
    """Unit state ∝ LN(FFN(y), y), y = LN(Attention(S, j), S_j), with γ = 1 and β = 0.

    The first layer norm's unit state is rescaled by κ = √d before the
    feed-forward block, matching the RMS normalization of the classical path.
    """
    mode = Mode(mode)
    att = q_attention_row(inputs, j, masked, mode, epsilon)
    ln = q_layernorm_state(att.encoding, inputs.s, j, inputs.width)
    kappa = math.sqrt(inputs.width)
    ff = q_ffn_state(ln.state, inputs.m1, inputs.m2, inputs.width, kappa, inputs.b1, inputs.b2,
                     mode, epsilon, source="layer_norm")
    out = q_output_layernorm(ff, ln.state, kappa, inputs.width)
    stages = (*att.reports, ln.report, ff.report, out.report)
    report = ResourceReport(stages, _expanded_totals(stages))
    logger.debug("quantum transformer row %d (%s): totals %s", j, mode.value, report.totals)
    return TransformerRun(
        out.state,
        {"softmax": RowState(np.sqrt(att.weights), (("norm", 1.0),), "softmax"),
         "attention": att.state, "layer_norm": ln.state, "ffn": ff.state, "output": out.state},
        att.alpha0,
        report,
    )


def cosine_similarity(a: ArrayLike, b: ArrayLike) -> float:
    u = np.asarray(a, dtype=float).reshape(-1)
    v = np.asarray(b, dtype=float).reshape(-1)
    nu, nv = float(np.linalg.norm(u)), float(np.linalg.norm(v))
    if nu < DEGENERATE_NORM or nv < DEGENERATE_NORM:
        raise DegenerateInputError("cosine similarity of a zero vector")
    return float(u @ v) / (nu * nv)
