from __future__ import annotations

import json
import logging
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qml.errors import ArgumentError, UnsupportedGateError, ValidationError
from qml.learners import (
    MLP,
    SGD,
    Adam,
    EpochRecord,
    QGANConfig,
    TrainRecord,
    bp_variance_experiment,
    build_hec,
    build_qcnn,
    capacity_bound_diagnostics,
    circuit_from_layout,
    encode_input,
    generate_images,
    hec_pairs,
    init_mlp,
    make_optimizer,
    mistake_bound,
    mlp_backprop,
    mlp_forward,
    mlp_train_step,
    parameter_shift_grad,
    patch_probabilities,
    perceptron_train,
    predicted_variance,
    qgan_patch_train,
    qnn_forward,
    readout_observable,
    softmax,
    synth_margin_dataset,
    two_design_variance,
    variance_slope,
)
from qml.learners.qgan import rescale
from qml.kernels.feature_maps import FeatureMapSpec
from qml.sim.states import StateVector
from workbench.acceptance import (
    check_barren_plateau,
    check_parameter_shift,
    check_perceptron_bound,
    check_qgan_smoke,
    check_qnn_classifier,
)


# ---------------------------------------------------------------------------
# Circuits
# ---------------------------------------------------------------------------

def test_hec_parameter_count_and_name():
    circuit = build_hec(3, 2)
    assert circuit.num_params == 18
    assert circuit.name == "hec-cz"
    assert build_hec(2, 1, "cnot").name == "hec-cnot"


def test_hec_rejects_unknown_entangler():
    with pytest.raises(ArgumentError):
        build_hec(2, 1, "XX")
    with pytest.raises(ArgumentError):
        build_hec(0, 1)


def test_hec_brick_pattern_alternates():
    assert hec_pairs(4, 0) == [(0, 1), (2, 3)]
    assert hec_pairs(4, 1) == [(1, 2)]


def test_hec_unitary_is_unitary(rng):
    circuit = build_hec(3, 2)
    u = circuit.unitary(rng.uniform(0, 2 * math.pi, circuit.num_params))
    np.testing.assert_allclose(u.conj().T @ u, np.eye(8), atol=1e-12)


def test_qcnn_reads_out_surviving_wire_and_refuses_shift_rule():
    circuit = build_qcnn(4)
    assert circuit.readout == (3,)
    with pytest.raises(UnsupportedGateError):
        circuit.check_shift_rule()
    theta = np.zeros(circuit.num_params)
    with pytest.raises(UnsupportedGateError):
        parameter_shift_grad(circuit, theta, StateVector.zero(4), readout_observable(4))


def test_layout_circuit_assigns_consecutive_slots():
    circuit = circuit_from_layout(2, [("RY", [0]), ("CNOT", [0, 1]), ("RX", [1])])
    assert circuit.num_params == 2
    with pytest.raises(ArgumentError):
        circuit_from_layout(1, [("FOO", [0])])


# ---------------------------------------------------------------------------
# Parameter shift
# ---------------------------------------------------------------------------

def test_parameter_shift_matches_central_difference(rng):
    circuit = build_hec(2, 2)
    theta = rng.uniform(0, 2 * math.pi, circuit.num_params)
    state = StateVector.zero(2)
    obs = readout_observable(2)
    grad = parameter_shift_grad(circuit, theta, state, obs)
    h = 1e-5
    for j in range(circuit.num_params):
        step = np.zeros_like(theta)
        step[j] = h
        fd = (qnn_forward(circuit, theta + step, state, obs)
              - qnn_forward(circuit, theta - step, state, obs)) / (2 * h)
        assert grad[j] == pytest.approx(fd, abs=1e-6)


def test_parameter_shift_rejects_mismatched_observable():
    circuit = build_hec(2, 1)
    with pytest.raises(ArgumentError):
        parameter_shift_grad(circuit, np.zeros(circuit.num_params), StateVector.zero(2),
                             np.eye(2))


def test_encode_input_pads_with_zero_wires():
    state = encode_input(FeatureMapSpec.parse("angleY"), [0.0, 0.0], 4)
    assert state.num_qubits == 4
    assert abs(state.amplitudes[0]) == pytest.approx(1.0)
    with pytest.raises(ArgumentError):
        encode_input(FeatureMapSpec.parse("angleY"), [0.1, 0.2, 0.3], 2)


def test_parameter_shift_criterion():
    assert check_parameter_shift(True, 0).passed


# ---------------------------------------------------------------------------
# Perceptron
# ---------------------------------------------------------------------------

def test_margin_dataset_respects_gamma():
    data = synth_margin_dataset(200, 5, 0.2, seed=1)
    assert data.margin >= 0.2 - 1e-12
    np.testing.assert_allclose(np.linalg.norm(data.features, axis=1), 1.0, atol=1e-12)
    assert set(np.unique(data.labels)) == {-1.0, 1.0}


def test_perceptron_stays_within_mistake_bound():
    data = synth_margin_dataset(200, 5, 0.2, seed=2)
    res = perceptron_train(data.features, data.labels)
    assert res.converged
    assert res.mistakes <= mistake_bound(0.2)
    assert np.all(data.labels * (data.features @ res.weights) > 0)


def test_mistake_bound_values():
    assert mistake_bound(0.5) == 4
    assert mistake_bound(0.2) == 25


def test_perceptron_input_checks():
    with pytest.raises(ArgumentError):
        perceptron_train(np.array([[2.0, 0.0]]), np.array([1.0]))
    with pytest.raises(ArgumentError):
        perceptron_train(np.array([[1.0, 0.0]]), np.array([0.0]))
    with pytest.raises(ArgumentError):
        synth_margin_dataset(10, 3, 1.5)


def test_perceptron_criterion():
    assert check_perceptron_bound(True, 0).passed


# ---------------------------------------------------------------------------
# Optimizers and MLP
# ---------------------------------------------------------------------------

def test_sgd_step():
    np.testing.assert_allclose(SGD(0.1).step([1.0, 2.0], [1.0, 1.0]), [0.9, 1.9])


def test_adam_first_step_moves_by_learning_rate():
    out = Adam(0.01).step([0.0, 0.0], [3.0, -0.5])
    np.testing.assert_allclose(out, [-0.01, 0.01], atol=1e-8)


def test_optimizer_validation():
    with pytest.raises(ArgumentError):
        SGD(0.0)
    with pytest.raises(ArgumentError):
        make_optimizer("rmsprop", 0.1)
    with pytest.raises(ArgumentError):
        SGD(0.1).step([1.0, 2.0], [1.0])


@given(st.lists(st.floats(-30, 30), min_size=1, max_size=8))
@settings(max_examples=50, deadline=None)
def test_softmax_rows_are_distributions(z):
    p = softmax(np.array([z]))
    assert p.sum() == pytest.approx(1.0)
    assert np.all(p >= 0)


def test_mlp_rejects_mismatched_layers():
    with pytest.raises(ValidationError):
        MLP((np.zeros((2, 3)),), (np.zeros(3),))


@pytest.mark.parametrize(("loss", "hidden", "output"), [
    ("mse", "tanh", "sigmoid"),
    ("bce", "relu", "sigmoid"),
    ("cross_entropy", "sigmoid", "softmax"),
])
def test_backprop_matches_finite_differences(rng, loss, hidden, output):
    mlp = init_mlp([3, 4, 2], seed=rng, hidden=hidden, output=output)
    x = rng.standard_normal((5, 3))
    if output == "softmax":
        y = np.eye(2)[rng.integers(0, 2, 5)]
    else:
        y = rng.integers(0, 2, (5, 2)).astype(float)
    grads = mlp_backprop(mlp, x, y, loss).flat()
    flat = mlp.flat()
    h = 1e-6
    for i in range(flat.size):
        step = np.zeros_like(flat)
        step[i] = h
        up = mlp_backprop(mlp.with_flat(flat + step), x, y, loss).loss
        down = mlp_backprop(mlp.with_flat(flat - step), x, y, loss).loss
        assert grads[i] == pytest.approx((up - down) / (2 * h), abs=1e-6)


def test_train_steps_reduce_loss():
    x = np.array([[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]])
    y = np.array([[1.0], [1.0], [0.0], [0.0]])
    mlp = init_mlp([2, 3, 1], seed=0)
    opt = SGD(0.1)
    mlp, first = mlp_train_step(mlp, opt, x, y)
    for _ in range(100):
        mlp, last = mlp_train_step(mlp, opt, x, y)
    assert last < first
    assert mlp_forward(mlp, x).shape == (4, 1)


# ---------------------------------------------------------------------------
# Records and capacity
# ---------------------------------------------------------------------------

def test_train_record_orders_epochs():
    record = TrainRecord(7, "demo").with_epoch(EpochRecord(1, 0.5)).with_epoch(EpochRecord(2, 0.3))
    assert record.losses == [0.5, 0.3]
    assert record.final is not None and record.final.epoch == 2
    lines = record.to_jsonl().splitlines()
    assert len(lines) == 2
    assert json.loads(lines[0])["seed"] == 7
    with pytest.raises(ValidationError):
        record.with_epoch(EpochRecord(2, 0.1))


def test_capacity_bounds_formula():
    bounds = capacity_bound_diagnostics(2, 1, 1.0, 100, epsilon=0.1)
    assert bounds.covering_log_bound == pytest.approx(8 * math.log(140))
    assert bounds.gen_bound == pytest.approx((9 + 48 * math.sqrt(2)) / 10)
    assert bounds.confidence_term == pytest.approx(3 * math.sqrt(math.log(40) / 200))
    with pytest.raises(ArgumentError):
        capacity_bound_diagnostics(0, 1, 1.0, 100)
    with pytest.raises(ArgumentError):
        capacity_bound_diagnostics(2, 1, 1.0, 100, delta=1.0)


# ---------------------------------------------------------------------------
# Barren plateaus
# ---------------------------------------------------------------------------

def test_predicted_variances():
    assert predicted_variance(2) == pytest.approx(0.125)
    # 2-design value approaches the leading-order prediction as N grows
    assert two_design_variance(8) == pytest.approx(predicted_variance(8), rel=0.02)


def test_bp_rows_and_small_sample_warning(caplog):
    with caplog.at_level(logging.WARNING, logger="qml.learners.barren"):
        rows = bp_variance_experiment([2, 3], 200, "shallow_local", seed=0)
    assert "noisy" in caplog.text
    assert [r.num_qubits for r in rows] == [2, 3]
    assert all(r.layers == 1 and r.samples == 200 and r.var_grad > 0 for r in rows)
    assert math.isfinite(variance_slope(rows))
    with pytest.raises(ArgumentError):
        bp_variance_experiment([2], 1)
    with pytest.raises(ArgumentError):
        variance_slope(rows[:1])


@pytest.mark.slow
def test_barren_plateau_criterion():
    assert check_barren_plateau(True, 0).passed


@pytest.mark.slow
def test_qnn_classifier_criterion():
    assert check_qnn_classifier(True, 0).passed


# ---------------------------------------------------------------------------
# Patch QGAN
# ---------------------------------------------------------------------------

def test_patch_probabilities_are_distributions(rng):
    circuit = build_hec(3, 2)
    theta = rng.uniform(0, 2 * math.pi, circuit.num_params)
    z = rng.uniform(0, 2 * math.pi, (5, 3))
    probs, post = patch_probabilities(circuit, theta, z, 1)
    assert probs.shape == (5, 4)
    np.testing.assert_allclose(probs.sum(axis=1), 1.0, atol=1e-12)
    assert np.all(post > 0) and np.all(post <= 1 + 1e-12)


def test_rescale_maps_into_unit_interval():
    out = rescale(np.array([[0.1, 0.4, 0.2, 0.3]]))
    assert out.min() == pytest.approx(0.0)
    assert out.max() < 1.0


def test_small_qgan_trains_and_generates(rng):
    config = QGANConfig(patches=2, num_qubits=3, ancillas=1, layers=1, epochs=2, batch=3,
                        hidden=4, seed=3)
    images = rng.uniform(0, 1, (6, config.pixels))
    res = qgan_patch_train(images, config)
    assert [e.epoch for e in res.record.epochs] == [1, 2]
    assert all("discriminator_loss" in e.extra for e in res.record.epochs)
    assert res.generator.shape == (2, res.circuit.num_params)
    fake = generate_images(res.circuit, res.generator, rng.uniform(0, 2 * math.pi, (2, 3)), 1)
    assert fake.shape == (2, config.pixels)


def test_qgan_rejects_wrong_pixel_count():
    with pytest.raises(ArgumentError):
        qgan_patch_train(np.zeros((2, 10)), QGANConfig())
    with pytest.raises(ArgumentError):
        QGANConfig(ancillas=5).validate()


@pytest.mark.slow
def test_qgan_smoke_criterion():
    assert check_qgan_smoke(True, 0).passed
