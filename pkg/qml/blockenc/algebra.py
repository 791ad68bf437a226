"""
Block-encoding algebra: LCU, products, transposes, linear combinations and
Hadamard products, each built as an explicit composed unitary.

Responsibilities:
- Keep alpha, ancilla count and propagated epsilon exact per construction
- Record provenance (parents, query multiplicities, formula ancilla counts)
- Fall back to compaction above the configured qubit limit
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from functools import reduce

import numpy as np
from numpy.typing import ArrayLike

from qml.blockenc.encoding import (
    BlockEncoding,
    Provenance,
    check_same_dim,
    compose,
    require_real,
)
from qml.constants import UNITARY_TOL
from qml.errors import ArgumentError, ValidationError
from qml.linalg import ComplexArray, as_complex, ceil_qubits, complete_unitary, dagger, is_unitary
from qml.sim.gates import embed_operator
from qml.sim.paulis import pauli_matrix

logger = logging.getLogger(__name__)


def _embed(u: ComplexArray, positions: Sequence[int], total: int) -> ComplexArray:
    return embed_operator(u, list(positions), total)


def _pad_ancillas(be: BlockEncoding, anc: int) -> ComplexArray:
    """Unitary of *be* with idle ancillas prepended up to *anc*."""
    extra = anc - be.anc
    if extra == 0:
        return be.unitary
    return np.kron(np.eye(2**extra, dtype=np.complex128), be.unitary)


def _select(unitaries: Sequence[ComplexArray], index_qubits: int) -> ComplexArray:
    """Σ_k |k⟩⟨k| ⊗ U_k, identity on unused index values."""
    dim = unitaries[0].shape[0]
    slots = 2**index_qubits
    out = np.zeros((slots * dim, slots * dim), dtype=np.complex128)
    for k in range(slots):
        block = unitaries[k] if k < len(unitaries) else np.eye(dim)
        out[k * dim : (k + 1) * dim, k * dim : (k + 1) * dim] = block
    return out


# ---------------------------------------------------------------------------
# LCU
# ---------------------------------------------------------------------------

def be_lcu(
    coeffs: Sequence[float], unitaries: Sequence[ArrayLike], label: str | None = None,
) -> BlockEncoding:
    """(‖α‖₁, ⌈log₂ m⌉)-encoding of Σ α_k U_k via PREP† · SELECT · PREP.

    Coefficients must be non-negative; fold signs and phases into U_k.
    """
    if not coeffs or len(coeffs) != len(unitaries):
        raise ArgumentError("LCU needs matching, non-empty coefficient and unitary lists")
    weights = np.asarray(coeffs, dtype=float)
    if np.any(weights < 0):
        raise ValidationError("LCU coefficients must be non-negative; fold signs into the unitaries")
    total = float(weights.sum())
    if total == 0.0:
        raise ArgumentError("LCU coefficients sum to zero")
    us = [as_complex(u) for u in unitaries]
    dim = us[0].shape[0]
    if any(u.shape != (dim, dim) for u in us):
        raise ArgumentError("LCU unitaries must share one dimension")
    for u in us:
        if not is_unitary(u, UNITARY_TOL):
            raise ValidationError("LCU term is not unitary")
    index_qubits = ceil_qubits(len(us))
    column = np.zeros(2**index_qubits)
    column[: len(us)] = np.sqrt(weights / total)
    prep = np.kron(complete_unitary(column), np.eye(dim))
    unitary = dagger(prep) @ _select(us, index_qubits) @ prep
    provenance = Provenance("lcu", label=label, formula_anc=index_qubits, notes={"terms": len(us)})
    return BlockEncoding(unitary, total, index_qubits, dim, provenance)


def be_from_pauli_terms(terms: Sequence[tuple[float, str]], label: str | None = None) -> BlockEncoding:
    """LCU over signed Pauli terms; negative signs are folded into the strings."""
    if not terms:
        raise ArgumentError("at least one Pauli term is required")
    coeffs = [abs(float(c)) for c, _ in terms]
    unitaries = [np.sign(c) * pauli_matrix(p) if c != 0 else pauli_matrix(p) for c, p in terms]
    return be_lcu(coeffs, unitaries, label=label)


# ---------------------------------------------------------------------------
# Product, transpose
# ---------------------------------------------------------------------------

def be_product(a: BlockEncoding, b: BlockEncoding) -> BlockEncoding:
    """(αβ, a+b)-encoding of AB; register order is [anc_A, anc_B, system]."""
    dim = check_same_dim([a, b])
    n = a.num_qubits
    total = a.anc + b.anc + n
    anc_a = list(range(a.anc))
    anc_b = list(range(a.anc, a.anc + b.anc))
    system = list(range(a.anc + b.anc, total))

    def build() -> ComplexArray:
        return _embed(a.unitary, anc_a + system, total) @ _embed(b.unitary, anc_b + system, total)

    provenance = Provenance(
        "product",
        parents=(a.provenance, b.provenance),
        formula_anc=a.provenance.formula_anc + b.provenance.formula_anc,
        epsilon=a.alpha * b.epsilon + b.alpha * a.epsilon,
    )
    return compose(
        total, build, lambda: a.extract() @ b.extract(), a.alpha * b.alpha, a.anc + b.anc, dim,
        provenance,
    )


def be_product_chain(encodings: Sequence[BlockEncoding]) -> BlockEncoding:
    """Left fold of be_product: A₁A₂…A_k."""
    if not encodings:
        raise ArgumentError("product chain needs at least one encoding")
    return reduce(be_product, encodings)


def be_transpose(a: BlockEncoding) -> BlockEncoding:
    """U† encodes A† = Aᵀ for a real block."""
    require_real(a.block, "transposed block")
    provenance = Provenance(
        "transpose", parents=(a.provenance,), formula_anc=a.provenance.formula_anc,
        epsilon=a.epsilon,
    )
    return BlockEncoding(dagger(a.unitary), a.alpha, a.anc, a.target_dim, provenance)


# ---------------------------------------------------------------------------
# Linear combination
# ---------------------------------------------------------------------------

def be_linear_combination(
    encodings: Sequence[BlockEncoding],
    coefficients: Sequence[complex],
    prep: tuple[ArrayLike, ArrayLike] | None = None,
) -> BlockEncoding:
    """Encoding of Σ x_k A_k at scale ‖y‖₁ with y_k = x_k α_k.

    The state-preparation pair (P_L, P_R) has first columns √(|y_k|/β) and
    √(|y_k|/β) e^{iθ_k}; a caller-supplied pair is checked against that.
    """
    if not encodings or len(encodings) != len(coefficients):
        raise ArgumentError("coefficient and encoding counts differ")
    dim = check_same_dim(encodings)
    y = np.array([complex(x) * be.alpha for x, be in zip(coefficients, encodings, strict=True)])
    beta = float(np.abs(y).sum())
    if beta == 0.0:
        raise ArgumentError("linear combination has all-zero weights")
    m = len(encodings)
    index_qubits = ceil_qubits(m)
    slots = 2**index_qubits
    left_col = np.zeros(slots, dtype=np.complex128)
    right_col = np.zeros(slots, dtype=np.complex128)
    left_col[:m] = np.sqrt(np.abs(y) / beta)
    right_col[:m] = np.sqrt(np.abs(y) / beta) * np.exp(1j * np.angle(y))
    if prep is not None:
        p_l, p_r = as_complex(prep[0]), as_complex(prep[1])
        if p_l.shape != (slots, slots) or p_r.shape != (slots, slots):
            raise ArgumentError(f"prep unitaries must be {slots}x{slots}")
        if not (is_unitary(p_l, UNITARY_TOL) and is_unitary(p_r, UNITARY_TOL)):
            raise ValidationError("prep pair is not unitary")
        produced = p_l[:, 0].conj() * p_r[:, 0]
        if not np.allclose(produced[:m], y / beta, atol=1e-9) or np.any(np.abs(produced[m:]) > 1e-9):
            raise ValidationError("prep pair does not realize the requested weights")
    else:
        p_l, p_r = complete_unitary(left_col), complete_unitary(right_col)
    a_max = max(be.anc for be in encodings)
    total = index_qubits + a_max + encodings[0].num_qubits

    def build() -> ComplexArray:
        inner = dim * 2**a_max
        select = _select([_pad_ancillas(be, a_max) for be in encodings], index_qubits)
        eye = np.eye(inner)
        return np.kron(dagger(p_l), eye) @ select @ np.kron(p_r, eye)

    def target() -> ComplexArray:
        return sum((complex(x) * be.extract() for x, be in zip(coefficients, encodings,
                                                             strict=True)), np.zeros((dim, dim)))

    provenance = Provenance(
        "linear_combination",
        parents=tuple(be.provenance for be in encodings),
        formula_anc=index_qubits + max(be.provenance.formula_anc for be in encodings),
        epsilon=float(sum(abs(complex(x)) * be.epsilon
                          for x, be in zip(coefficients, encodings, strict=True))),
        notes={"weights": [complex(v) for v in y]},
    )
    return compose(total, build, target, beta, index_qubits + a_max, dim, provenance)


# ---------------------------------------------------------------------------
# Hadamard product
# ---------------------------------------------------------------------------

def _fanout_permutation(total: int, controls: Sequence[int], targets: Sequence[int]) -> np.ndarray:
    """Index map of the bitwise CNOT fan-out controls[q] → targets[q]."""
    idx = np.arange(2**total)
    out = idx.copy()
    for c, t in zip(controls, targets, strict=True):
        cbit = total - 1 - c
        tbit = total - 1 - t
        out ^= ((idx >> cbit) & 1) << tbit
    return out


def be_hadamard_product(a: BlockEncoding, b: BlockEncoding) -> BlockEncoding:
    """(αβ, a+b+N)-encoding of A∘B.

    Register order is [anc_A, anc_B, sys₂, sys₁]; U_A acts on sys₁, U_B on
    sys₂ and the CNOT fan-out P = Σ|i⟩⟨i|⊗|i⊕j⟩⟨j| brackets them, so the
    corner block of P(U_A ⊗ U_B)P is A∘B/(αβ).
    """
    dim = check_same_dim([a, b])
    n = a.num_qubits
    total = a.anc + b.anc + 2 * n
    anc_a = list(range(a.anc))
    anc_b = list(range(a.anc, a.anc + b.anc))
    sys2 = list(range(a.anc + b.anc, a.anc + b.anc + n))
    sys1 = list(range(a.anc + b.anc + n, total))

    def build() -> ComplexArray:
        w = _embed(a.unitary, anc_a + sys1, total) @ _embed(b.unitary, anc_b + sys2, total)
        perm = _fanout_permutation(total, sys1, sys2)
        # P is an involutive permutation: PM = M[p], MP = M[:, p]
        return w[perm][:, perm]

    provenance = Provenance(
        "hadamard_product",
        parents=(a.provenance, b.provenance),
        formula_anc=a.provenance.formula_anc + b.provenance.formula_anc + n,
        epsilon=a.alpha * b.epsilon + b.alpha * a.epsilon,
    )
    return compose(
        total, build, lambda: a.extract() * b.extract(), a.alpha * b.alpha,
        a.anc + b.anc + n, dim, provenance,
    )
