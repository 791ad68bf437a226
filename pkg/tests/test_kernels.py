from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qml.errors import ArgumentError, SingularityError, ValidationError
from qml.kernels import (
    ClassicalKernelKind,
    ClassicalKernelSpec,
    FeatureMapKind,
    FeatureMapSpec,
    KernelMatrix,
    RidgeModel,
    adjoint_kernel,
    adversarial_dataset,
    c2qe_embed,
    c2qe_qubits,
    c2qe_sample,
    classical_kernel,
    geometric_difference,
    kernel_fourier_decompose,
    kernel_matrix,
    kernel_risk_bounds,
    kernel_vector,
    model_complexity,
    quantum_kernel,
    ridge_fit,
    ridge_predict,
    swap_test_kernel,
)
from workbench.acceptance import (
    check_c2qe,
    check_geometric_difference,
    check_kernel_identities,
    check_risk_bounds,
)

angles = st.floats(0.0, 2 * math.pi, exclude_max=True, allow_nan=False)


# ---------------------------------------------------------------------------
# Feature maps and kernel evaluation
# ---------------------------------------------------------------------------

def test_unknown_feature_map():
    with pytest.raises(ArgumentError):
        FeatureMapSpec.parse("angleZ")


def test_single_qubit_map_takes_one_feature():
    with pytest.raises(ArgumentError):
        FeatureMapSpec(FeatureMapKind.SINGLE_QUBIT_RX).encode([0.1, 0.2])


def test_qubit_budget_is_enforced():
    spec = FeatureMapSpec(FeatureMapKind.ANGLE_X, qubit_budget=2)
    with pytest.raises(ArgumentError):
        spec.encode([0.1, 0.2, 0.3])


@given(angles, angles)
@settings(max_examples=50, deadline=None)
def test_rx_kernel_closed_form(x, xp):
    spec = FeatureMapSpec(FeatureMapKind.SINGLE_QUBIT_RX)
    assert quantum_kernel(spec, [x], [xp]) == pytest.approx(math.cos((x - xp) / 2) ** 2, abs=1e-12)


@given(st.lists(angles, min_size=2, max_size=2), st.lists(angles, min_size=2, max_size=2))
@settings(max_examples=25, deadline=None)
def test_swap_test_and_adjoint_agree_with_overlap(x, xp):
    spec = FeatureMapSpec.parse("angleY")
    exact = quantum_kernel(spec, x, xp)
    assert swap_test_kernel(spec, x, xp) == pytest.approx(exact, abs=1e-10)
    assert adjoint_kernel(spec, x, xp) == pytest.approx(exact, abs=1e-10)


def test_sampled_swap_test_is_noisy_but_close(rng):
    spec = FeatureMapSpec.parse("angleX")
    exact = quantum_kernel(spec, [0.3, 1.1], [0.9, 0.2])
    sampled = swap_test_kernel(spec, [0.3, 1.1], [0.9, 0.2], shots=20_000, seed=rng)
    assert abs(sampled - exact) < 0.05


def test_classical_kernels():
    x, xp = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    assert classical_kernel(ClassicalKernelSpec(ClassicalKernelKind.GAUSSIAN, sigma=1.0), x, xp) \
        == pytest.approx(math.exp(-1.0))
    poly = ClassicalKernelSpec(ClassicalKernelKind.POLYNOMIAL, degree=2, offset=1.0)
    assert classical_kernel(poly, x, x) == pytest.approx(4.0)
    with pytest.raises(ArgumentError):
        ClassicalKernelSpec(ClassicalKernelKind.GAUSSIAN, sigma=0.0)


def test_quantum_gram_matrix_is_valid(rng):
    data = rng.uniform(0, math.pi, (6, 2))
    km = kernel_matrix(data, FeatureMapSpec.parse("angleX"))
    assert km.quantum
    np.testing.assert_allclose(np.diag(km.entries), 1.0)
    assert np.linalg.eigvalsh(km.entries).min() >= -1e-10
    vec = kernel_vector(data, data[0], FeatureMapSpec.parse("angleX"))
    np.testing.assert_allclose(vec, km.entries[0], atol=1e-12)


def test_kernel_matrix_rejects_asymmetric():
    with pytest.raises(ValidationError):
        KernelMatrix(np.array([[1.0, 0.2], [0.1, 1.0]]), "bad")


# ---------------------------------------------------------------------------
# Fourier structure
# ---------------------------------------------------------------------------

def test_rx_kernel_fourier_coefficients():
    table = kernel_fourier_decompose(FeatureMapSpec(FeatureMapKind.SINGLE_QUBIT_RX), 1)
    assert table.coefficient((0,), (0,)) == pytest.approx(0.5, abs=1e-10)
    assert table.coefficient((1,), (-1,)) == pytest.approx(0.25, abs=1e-10)
    assert table.coefficient((-1,), (1,)) == pytest.approx(0.25, abs=1e-10)
    assert table.residual < 1e-10
    assert table.evaluate([0.4], [1.3]) == pytest.approx(math.cos(0.45) ** 2, abs=1e-10)


def test_fourier_needs_angle_map():
    with pytest.raises(ArgumentError):
        kernel_fourier_decompose(FeatureMapSpec(FeatureMapKind.AMPLITUDE), 1)


# ---------------------------------------------------------------------------
# C2QE
# ---------------------------------------------------------------------------

def test_c2qe_register_size():
    assert c2qe_qubits(3) == 1
    assert c2qe_qubits(4) == 2
    assert c2qe_qubits(15) == 2
    assert c2qe_qubits(16) == 3


def test_c2qe_requires_unit_l1_norm():
    with pytest.raises(ArgumentError):
        c2qe_embed([0.5, 0.2])


def test_c2qe_sample_converges(rng):
    r = np.array([0.5, -0.3, 0.2])
    sampled = c2qe_sample(r, 50_000, rng)
    assert np.max(np.abs(sampled.matrix - c2qe_embed(r).matrix)) < 0.02


# ---------------------------------------------------------------------------
# Ridge regression, complexity and advantage
# ---------------------------------------------------------------------------

def _gram(rng, n=8):
    g = rng.standard_normal((n, n))
    return g @ g.T + 0.5 * np.eye(n)


def test_ridge_interpolates_at_zero_lambda(rng):
    k = _gram(rng)
    y = rng.standard_normal(8)
    model = ridge_fit(k, y, 0.0)
    for i in range(8):
        assert ridge_predict(model, k[i]) == pytest.approx(y[i], abs=1e-8)
    again = RidgeModel.from_dict(model.to_dict())
    np.testing.assert_allclose(again.dual, model.dual)


def test_ridge_rejects_negative_lambda(rng):
    with pytest.raises(ArgumentError):
        ridge_fit(_gram(rng), np.zeros(8), -1.0)


def test_singular_kernel_at_zero_lambda():
    with pytest.raises(SingularityError):
        ridge_fit(np.ones((3, 3)), np.ones(3), 0.0)


def test_model_complexity_falls_back_to_pseudo_inverse():
    mc = model_complexity(np.ones((2, 2)), [1.0, 1.0])
    assert mc.pseudo_inverse
    assert float(mc) == pytest.approx(1.0)


def test_geometric_difference_of_identical_kernels(rng):
    k = _gram(rng)
    assert float(geometric_difference(k, k)) == pytest.approx(1.0, abs=1e-8)


def test_adversarial_labels_saturate(rng):
    adv = adversarial_dataset(_gram(rng), _gram(rng))
    assert adv.ratio == pytest.approx(adv.g_squared, rel=1e-8)
    assert set(np.unique(adv.signs)) <= {-1.0, 1.0}


def test_risk_bound_training_term_vanishes(rng):
    bounds = kernel_risk_bounds(_gram(rng), rng.standard_normal(8), 0.0)
    assert bounds.train_bound == 0.0
    assert bounds.gen_bound > 0.0


def test_kernel_identity_criterion():
    assert check_kernel_identities(True, 0).passed


def test_c2qe_criterion():
    assert check_c2qe(True, 0).passed


def test_geometric_difference_criterion():
    assert check_geometric_difference(True, 0).passed


def test_risk_bound_criterion():
    assert check_risk_bounds(True, 0).passed
