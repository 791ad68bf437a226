"""
Transforms of block-encoded matrices.

Responsibilities:
- Projector, all-ones and single-row-mask encodings
- Element-wise polynomials (Hadamard powers + linear combination) and the
  exact element-wise emulation used when truncation error must be excluded
- Singular-value transforms: polynomial QSVT emulation and pseudo-inverse
- Diagonal encodings of real amplitude vectors

The singular-value transforms are emulated at matrix level: the transformed
block is computed from an SVD and re-embedded by dilation, while provenance
records the query counts a phase-sequence circuit would spend.
"""

from __future__ import annotations

import dataclasses
import logging
import math
from collections.abc import Callable

import numpy as np
from numpy.typing import ArrayLike
from scipy import linalg

from qml.blockenc.algebra import be_hadamard_product, be_linear_combination
from qml.blockenc.encoding import (
    BlockEncoding,
    Provenance,
    StateEncoding,
    dilated_encoding,
    require_real,
)
from qml.blockenc.polynomials import PolySpec
from qml.constants import HERMITIAN_TOL, QSVT_BOUND, ZERO_SINGULAR_VALUE
from qml.errors import ArgumentError, PreconditionError, ValidationError
from qml.linalg import ComplexArray, as_complex, ceil_qubits, is_hermitian, qubits_for_dim
from qml.sim.gates import hadamard_all

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Fixed encodings
# ---------------------------------------------------------------------------

def _projector_unitary(projector: ComplexArray) -> ComplexArray:
    eye = np.eye(projector.shape[0])
    return np.block([[projector, eye - projector], [eye - projector, projector]])


def be_projector(projector: ArrayLike, label: str | None = None) -> BlockEncoding:
    """(1, 1)-encoding of an orthogonal projector Π via [[Π, I−Π], [I−Π, Π]]."""
    p = as_complex(projector)
    if not is_hermitian(p, HERMITIAN_TOL) or not np.allclose(p @ p, p, atol=1e-9, rtol=0.0):
        raise ValidationError("matrix is not an orthogonal projector")
    qubits_for_dim(p.shape[0])
    return BlockEncoding(
        _projector_unitary(p), 1.0, 1, p.shape[0], Provenance("projector", label=label,
                                                            formula_anc=1),
    )


def be_all_ones(num_qubits: int) -> BlockEncoding:
    """(2^N, 1)-encoding of the all-ones matrix J = 2^N |+⟩⟨+|."""
    dim = 2**num_qubits
    plus = np.full(dim, 1 / math.sqrt(dim), dtype=np.complex128)
    u = _projector_unitary(np.outer(plus, plus))
    return BlockEncoding(u, float(dim), 1, dim, Provenance("all_ones", formula_anc=1))


def _swap_permutation(dim: int, j: int) -> ComplexArray:
    order = np.arange(dim)
    order[[0, j]] = order[[j, 0]]
    return np.eye(dim, dtype=np.complex128)[order]


def be_row_mask(num_qubits: int, row: int) -> BlockEncoding:
    """(√2^N, 1)-encoding of Σ_k |j⟩⟨k| = √D |j⟩⟨+|, as Perm(0↔j) · |0⟩⟨0| · H^{⊗N}."""
    dim = 2**num_qubits
    if not 0 <= row < dim:
        raise ArgumentError(f"row {row} out of range for dimension {dim}")
    zero = np.zeros((dim, dim), dtype=np.complex128)
    zero[0, 0] = 1.0
    eye2 = np.eye(2)
    u = (
        np.kron(eye2, _swap_permutation(dim, row))
        @ _projector_unitary(zero)
        @ np.kron(eye2, hadamard_all(num_qubits))
    )
    return BlockEncoding(
        u, math.sqrt(dim), 1, dim, Provenance("row_mask", formula_anc=1, notes={"row": row}),
    )


# ---------------------------------------------------------------------------
# Element-wise transforms
# ---------------------------------------------------------------------------

def elementwise_ancillas(degree: int, anc: int, num_qubits: int) -> int:
    """Textbook ancilla count r·a + (r−1)N + ⌈log₂(r+1)⌉."""
    return degree * anc + (degree - 1) * num_qubits + ceil_qubits(degree + 1)


def _summary_provenance(
    op: str, a: BlockEncoding, degree: int, **notes: object,
) -> Provenance:
    return Provenance(
        op,
        parents=(a.provenance,),
        uses=(degree * (degree + 1) // 2,),
        formula_anc=elementwise_ancillas(degree, a.provenance.formula_anc, a.num_qubits),
        notes=dict(notes, degree=degree),
    )


def be_elementwise_poly(
    a: BlockEncoding, poly: PolySpec, row_restrict: int | None = None,
) -> BlockEncoding:
    """Encoding of Σ_j c_j (A/α)^{∘j}, plus c₀ on the all-ones (or row-j) mask.

    Hadamard powers are built one by one and summed with a linear
    combination.  The produced scale is C = Σ_{j≥1}|c_j| plus |c₀|·2^N
    (|c₀|·√2^N when row-restricted); the scale C' = r·|c₀| + C quoted for
    the textbook construction is kept in the provenance notes.
    """
    degree = poly.degree
    if degree < 1:
        raise ValidationError("element-wise transform needs a polynomial of degree ≥ 1")
    n = a.num_qubits
    encodings: list[BlockEncoding] = []
    weights: list[complex] = []
    power = a
    for j in range(1, degree + 1):
        if j > 1:
            power = be_hadamard_product(power, a)
        c = poly.coefficients[j]
        if c != 0:
            encodings.append(power)
            weights.append(c / a.alpha**j)
    c0 = poly.constant_term
    if c0 != 0:
        mask = be_all_ones(n) if row_restrict is None else be_row_mask(n, row_restrict)
        encodings.append(mask)
        weights.append(c0)
    combined = be_linear_combination(encodings, weights)
    c_tail = poly.l1_norm(from_degree=1)
    provenance = _summary_provenance(
        "elementwise_poly", a, degree,
        produced_scale=combined.alpha,
        stated_scale=degree * abs(c0) + c_tail,
        row=row_restrict,
        poly=poly.label,
    )
    slope = sum(j * abs(c) for j, c in enumerate(poly.coefficients))
    if a.alpha > 0:
        provenance = dataclasses.replace(provenance, epsilon=slope * a.epsilon / a.alpha)
    return dataclasses.replace(combined, provenance=provenance)


def be_elementwise_map(
    a: BlockEncoding,
    func: Callable[[np.ndarray], np.ndarray],
    bound: float,
    row_restrict: int | None = None,
    degree: int = 1,
    label: str = "map",
) -> BlockEncoding:
    """Exact f∘(A/α), scaled the way a polynomial with a constant term would be.

    Scale is bound·2^N, or bound·√2^N keeping only row j when row-restricted.
    *degree* is the polynomial degree the emulation stands in for and only
    affects the recorded query count.
    """
    block = require_real(a.block, "element-wise map input")
    values = np.asarray(func(block), dtype=float)
    peak = float(np.max(np.abs(values))) if values.size else 0.0
    if peak > bound * (1 + 1e-12):
        raise ValidationError(f"|f| reaches {peak:.6g}, above the declared bound {bound:.6g}")
    dim = a.target_dim
    if row_restrict is None:
        target, scale = values, bound * dim
    else:
        if not 0 <= row_restrict < dim:
            raise ArgumentError(f"row {row_restrict} out of range for dimension {dim}")
        target = np.zeros_like(values)
        target[row_restrict] = values[row_restrict]
        scale = bound * math.sqrt(dim)
    provenance = _summary_provenance(
        "elementwise_map", a, max(degree, 1), row=row_restrict, func=label,
    )
    return dilated_encoding(target, scale, provenance)


# ---------------------------------------------------------------------------
# Singular-value transforms
# ---------------------------------------------------------------------------

def qsvt_apply(a: BlockEncoding, poly: PolySpec) -> BlockEncoding:
    """Scale-1 encoding of P^{(SV)}(A/α) = Σ P(σᵢ)|wᵢ⟩⟨vᵢ|.

    Requires |P| ≤ 1/4 on [−1, 1]; d = deg P queries are recorded.
    """
    if poly.declared_bound > QSVT_BOUND + 1e-12:
        raise ValidationError(
            f"QSVT needs |P| ≤ {QSVT_BOUND}, declared bound is {poly.declared_bound:.6g}"
        )
    measured = poly.measured_bound()
    if measured > QSVT_BOUND + 1e-9:
        raise ValidationError(f"polynomial reaches {measured:.6g} on [-1, 1]")
    w, sigma, vh = linalg.svd(a.block)
    target = (w * poly.evaluate(sigma)) @ vh
    provenance = Provenance(
        "qsvt",
        parents=(a.provenance,),
        uses=(max(poly.degree, 1),),
        formula_anc=a.provenance.formula_anc + 3,
        epsilon=poly.degree * a.epsilon / a.alpha if a.alpha > 0 else 0.0,
        notes={"degree": poly.degree, "poly": poly.label},
    )
    return dilated_encoding(target, 1.0, provenance)


def be_pseudo_inverse(a: BlockEncoding, delta: float, epsilon: float) -> BlockEncoding:
    """(1/δ, a+2)-encoding of the pseudo-inverse of A/α.

    Singular values at or below 1e-12 count as zero; any other singular
    value under δ fails the precondition.
    """
    if not 0.0 < epsilon <= delta <= 0.5:
        raise ArgumentError(f"need 0 < ε ≤ δ ≤ 1/2, got ε={epsilon}, δ={delta}")
    w, sigma, vh = linalg.svd(a.block)
    inverse = np.zeros_like(sigma)
    for i, s in enumerate(sigma):
        if s <= ZERO_SINGULAR_VALUE:
            continue
        if s < delta:
            raise PreconditionError(f"singular value below δ={delta}", float(s))
        inverse[i] = 1.0 / s
    target = (vh.conj().T * inverse) @ w.conj().T
    queries = math.ceil((1.0 / delta) * math.log(1.0 / epsilon))
    provenance = Provenance(
        "pseudo_inverse",
        parents=(a.provenance,),
        uses=(max(queries, 1),),
        formula_anc=a.provenance.formula_anc + 2,
        epsilon=epsilon,
        notes={"delta": delta, "epsilon": epsilon},
    )
    return dilated_encoding(target, 1.0 / delta, provenance)


def be_diag_from_state(se: StateEncoding) -> BlockEncoding:
    """(1, N+2)-encoding of diag(ψ) for a real amplitude vector ψ."""
    psi = require_real(se.state(), "diagonal amplitudes")
    n = qubits_for_dim(se.target_dim)
    scale = max(1.0, float(np.max(np.abs(psi))))
    provenance = Provenance(
        "diag_from_state",
        parents=(Provenance("state", label=se.label),),
        formula_anc=n + 2,
        epsilon=se.epsilon,
    )
    return dilated_encoding(np.diag(psi).astype(np.complex128), scale, provenance)
