from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qml.blockenc import (
    PolySpec,
    be_all_ones,
    be_diag_from_state,
    be_elementwise_map,
    be_elementwise_poly,
    be_from_matrix,
    be_from_pauli_terms,
    be_from_unitary,
    be_hadamard_product,
    be_lcu,
    be_linear_combination,
    be_product,
    be_product_chain,
    be_projector,
    be_pseudo_inverse,
    be_row_mask,
    be_transpose,
    count_queries,
    gelu,
    grid_error,
    poly_approx_exp,
    poly_approx_gelu,
    qsvt_apply,
    state_encode,
)
from qml.errors import ArgumentError, PreconditionError, ValidationError
from qml.sim.paulis import pauli_matrix
from workbench.acceptance import check_blockenc_demo, check_polynomials, check_qsvt_pinv


def _corner_is_scaled_target(be, target, tol=1e-10):
    np.testing.assert_allclose(be.alpha * be.unitary[: be.target_dim, : be.target_dim], target,
                               atol=tol)
    u = be.unitary
    np.testing.assert_allclose(u.conj().T @ u, np.eye(u.shape[0]), atol=1e-9)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def test_demo_lcu_encoding(demo_terms):
    be = be_from_pauli_terms(demo_terms, label="A")
    dense = 0.36 * pauli_matrix("IZ") + 0.64 * pauli_matrix("XX")
    _corner_is_scaled_target(be, dense)
    assert be.alpha == pytest.approx(1.0)
    assert be.anc == 1
    assert count_queries(be) == {"A": 1}


def test_negative_pauli_coefficient_is_folded():
    be = be_from_pauli_terms([(-0.5, "Z"), (0.5, "X")])
    _corner_is_scaled_target(be, -0.5 * pauli_matrix("Z") + 0.5 * pauli_matrix("X"))


def test_lcu_rejects_negative_weights():
    with pytest.raises(ValidationError):
        be_lcu([-1.0], [np.eye(2)])


def test_matrix_encoding_pads_rectangular_input(rng):
    a = rng.standard_normal((3, 2))
    be = be_from_matrix(a)
    assert be.target_dim == 4
    padded = np.zeros((4, 4))
    padded[:3, :2] = a
    _corner_is_scaled_target(be, padded)


def test_scale_below_spectral_norm_is_rejected():
    with pytest.raises(ValidationError):
        be_from_matrix(np.eye(2) * 2.0, alpha=1.0)


def test_unitary_encoding_has_no_ancillas():
    be = be_from_unitary(pauli_matrix("Y"))
    assert be.anc == 0
    with pytest.raises(ValidationError):
        be_from_unitary(np.array([[1, 1], [0, 1]]))


def test_state_encoding_first_column(rng):
    x = rng.standard_normal(3)
    se = state_encode(x)
    np.testing.assert_allclose(se.state()[:3].real, x, atol=1e-12)
    assert se.alpha == pytest.approx(np.linalg.norm(x))
    with pytest.raises(ArgumentError):
        state_encode(np.zeros(4))


# ---------------------------------------------------------------------------
# Algebra
# ---------------------------------------------------------------------------

@given(st.integers(0, 2**31 - 1))
@settings(max_examples=15, deadline=None)
def test_product_hadamard_and_combination(seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((2, 2))
    b = rng.standard_normal((2, 2))
    ea, eb = be_from_matrix(a), be_from_matrix(b)
    _corner_is_scaled_target(be_product(ea, eb), a @ b, tol=1e-9)
    _corner_is_scaled_target(be_hadamard_product(ea, eb), a * b, tol=1e-9)
    _corner_is_scaled_target(be_linear_combination([ea, eb], [0.3, -1.2j]), 0.3 * a - 1.2j * b,
                             tol=1e-9)


def test_product_chain_and_query_counts(rng):
    a = be_from_matrix(rng.standard_normal((2, 2)), label="A")
    b = be_from_matrix(rng.standard_normal((2, 2)), label="B")
    chain = be_product_chain([a, b, a])
    np.testing.assert_allclose(chain.extract(), a.extract() @ b.extract() @ a.extract(),
                               atol=1e-9)
    assert count_queries(chain) == {"A": 2, "B": 1}


def test_transpose_of_real_block(rng):
    a = rng.standard_normal((4, 4))
    _corner_is_scaled_target(be_transpose(be_from_matrix(a)), a.T)


def test_transpose_requires_real_block():
    with pytest.raises(ValidationError):
        be_transpose(be_from_matrix(np.array([[1j, 0], [0, 1]])))


def test_mismatched_dimensions():
    with pytest.raises(ArgumentError):
        be_product(be_from_matrix(np.eye(2)), be_from_matrix(np.eye(4)))


def test_all_zero_combination():
    with pytest.raises(ArgumentError):
        be_linear_combination([be_from_matrix(np.eye(2))], [0.0])


def test_projector_and_masks():
    proj = np.diag([1.0, 0.0])
    _corner_is_scaled_target(be_projector(proj), proj)
    _corner_is_scaled_target(be_all_ones(2), np.ones((4, 4)))
    mask = np.zeros((4, 4))
    mask[2] = 1.0
    _corner_is_scaled_target(be_row_mask(2, 2), mask)
    with pytest.raises(ValidationError):
        be_projector(np.array([[1.0, 1.0], [0.0, 0.0]]))


def test_diagonal_from_state(rng):
    psi = rng.standard_normal(4)
    psi /= np.linalg.norm(psi)
    be = be_diag_from_state(state_encode(psi))
    np.testing.assert_allclose(be.extract(), np.diag(psi), atol=1e-10)


# ---------------------------------------------------------------------------
# Element-wise and singular-value transforms
# ---------------------------------------------------------------------------

def test_elementwise_poly_matches_entrywise_polynomial(rng):
    a = rng.uniform(-1, 1, (2, 2))
    be = be_from_matrix(a)
    poly = PolySpec((0.1, 0.5, 0.0, 0.25))
    out = be_elementwise_poly(be, poly)
    block = a / be.alpha
    np.testing.assert_allclose(out.extract(), 0.1 + 0.5 * block + 0.25 * block**3, atol=1e-9)
    assert out.provenance.notes["degree"] == 3


def test_elementwise_poly_row_restricted(rng):
    a = rng.uniform(-1, 1, (4, 4))
    be = be_from_matrix(a)
    out = be_elementwise_poly(be, PolySpec((0.2, 1.0)), row_restrict=1)
    expected = np.zeros((4, 4))
    expected += a / be.alpha
    expected[1] += 0.2
    np.testing.assert_allclose(out.extract()[1], expected[1], atol=1e-9)


def test_elementwise_map_bound_is_checked():
    be = be_from_matrix(np.array([[0.5, -0.2], [0.3, 0.1]]))
    mapped = be_elementwise_map(be, np.exp, math.e)
    np.testing.assert_allclose(mapped.extract(), np.exp(be.block.real), atol=1e-10)
    with pytest.raises(ValidationError):
        be_elementwise_map(be, np.exp, 1.0)


def test_qsvt_bound_is_enforced(rng):
    be = be_from_matrix(rng.standard_normal((2, 2)))
    with pytest.raises(ValidationError):
        qsvt_apply(be, PolySpec((0.0, 1.0)))


def test_pseudo_inverse_rejects_small_singular_value():
    be = be_from_matrix(np.diag([1.0, 0.1]))
    with pytest.raises(PreconditionError):
        be_pseudo_inverse(be, 0.25, 1e-6)


def test_pseudo_inverse_drops_exact_zero():
    be = be_from_matrix(np.diag([1.0, 0.0]))
    inv = be_pseudo_inverse(be, 0.25, 1e-6)
    np.testing.assert_allclose(inv.extract(), np.diag([1.0, 0.0]), atol=1e-10)
    assert inv.alpha == pytest.approx(4.0)


def test_pseudo_inverse_parameter_order():
    with pytest.raises(ArgumentError):
        be_pseudo_inverse(be_from_matrix(np.eye(2)), 0.1, 0.2)


@pytest.mark.parametrize("epsilon", [1e-3, 1e-6, 1e-9])
def test_exp_approximation_meets_tolerance(epsilon):
    spec = poly_approx_exp(epsilon)
    assert grid_error(spec, np.exp) <= epsilon


def test_gelu_approximation_on_interval():
    spec = poly_approx_gelu(2.0, 1.0, 1e-5)
    assert spec.domain == (-1.0, 1.0)
    assert grid_error(spec, lambda x: gelu(2.0 * x)) <= 1e-5


def test_epsilon_below_double_precision():
    with pytest.raises(ArgumentError):
        poly_approx_exp(1e-15)


def test_blockenc_demo_criterion():
    assert check_blockenc_demo(True, 0).passed


def test_qsvt_criterion():
    assert check_qsvt_pinv(True, 0).passed


def test_polynomial_criterion():
    assert check_polynomials(True, 0).passed
