from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qml.config import SimConfig, use_config
from qml.errors import ArgumentError, CapacityError, ValidationError
from qml.rng import derive_stream
from qml.sim import (
    DensityMatrix,
    StateVector,
    apply_channel,
    depolarizing_channel,
    expectation,
    fidelity,
    haar_random_unitary,
    kraus_dilation,
    measure_computational,
    measure_povm,
    measure_projective,
    partial_trace,
    pauli_channel,
    purity,
    random_density_matrix,
    random_state,
    stinespring_apply,
    trace_distance,
)
from qml.sim import gates
from qml.sim.circuit import apply_gate, named_state
from qml.sim.measure import Observable, computational_projectors
from qml.sim.paulis import pauli_matrix
from workbench.acceptance import check_channel_algebra, check_dilation, check_haar_moments

probabilities = st.floats(0.0, 1.0, allow_nan=False)


# ---------------------------------------------------------------------------
# States
# ---------------------------------------------------------------------------

def test_unnormalized_state_is_rejected():
    with pytest.raises(ValidationError):
        StateVector(np.array([1.0, 1.0]))


def test_non_power_of_two_length_is_rejected():
    with pytest.raises((ArgumentError, ValidationError)):
        StateVector(np.ones(3) / math.sqrt(3))


def test_qubit_zero_is_most_significant():
    state = StateVector.from_bits("10")
    assert state.probabilities()[2] == pytest.approx(1.0)


def test_register_cap_is_enforced():
    with use_config(SimConfig(max_qubits=2)), pytest.raises(CapacityError):
        StateVector.zero(3)


def test_density_matrix_rejects_negative_eigenvalue():
    with pytest.raises(ValidationError):
        DensityMatrix(np.diag([1.5, -0.5]))


def test_bell_state_reduces_to_maximally_mixed():
    bell = named_state("bell", 2)
    reduced = partial_trace(bell, [0])
    np.testing.assert_allclose(reduced.matrix, np.eye(2) / 2, atol=1e-12)
    assert purity(reduced) == pytest.approx(0.5)


def test_ghz_amplitudes():
    ghz = named_state("ghz", 3)
    expected = np.zeros(8)
    expected[[0, 7]] = 1 / math.sqrt(2)
    np.testing.assert_allclose(ghz.amplitudes, expected, atol=1e-12)


def test_unknown_named_state():
    with pytest.raises(ArgumentError):
        named_state("w", 3)


@given(st.integers(0, 2**31 - 1))
@settings(max_examples=25, deadline=None)
def test_random_density_matrix_is_valid(seed):
    rho = random_density_matrix(2, seed)
    assert rho.min_eigenvalue() >= -1e-10
    assert 0.25 - 1e-12 <= purity(rho) <= 1 + 1e-12


def test_pure_state_fidelity_and_distance(rng):
    psi = random_state(2, rng)
    assert fidelity(psi, psi) == pytest.approx(1.0)
    assert trace_distance(psi, psi) == pytest.approx(0.0, abs=1e-12)
    orthogonal = StateVector.basis(1, 1)
    assert trace_distance(StateVector.zero(1), orthogonal) == pytest.approx(1.0)


# ---------------------------------------------------------------------------
# Gates and measurement
# ---------------------------------------------------------------------------

def test_rotation_matches_closed_form():
    theta = 0.7
    expected = math.cos(theta / 2) * np.eye(2) - 1j * math.sin(theta / 2) * pauli_matrix("X")
    np.testing.assert_allclose(gates.rx(theta).matrix, expected, atol=1e-14)


def test_rot_reduces_to_single_axis_rotations():
    np.testing.assert_allclose(gates.rot(0.0, 0.9, 0.0).matrix, gates.ry(0.9).matrix, atol=1e-14)
    np.testing.assert_allclose(gates.rot(0.3, 0.0, 0.5).matrix, gates.rz(0.8).matrix, atol=1e-14)


def test_non_unitary_gate_is_rejected():
    with pytest.raises(ValidationError):
        gates.Gate(np.array([[1, 1], [0, 1]]), "bad")


def test_hadamard_gives_uniform_counts():
    plus = apply_gate(StateVector.zero(1), gates.H, [0])
    probs = measure_computational(plus)
    assert probs["0"] == pytest.approx(0.5)
    assert probs["1"] == pytest.approx(0.5)


def test_sampled_counts_sum_to_shots(rng):
    counts = measure_computational(named_state("ghz", 3), shots=500, seed=rng)
    assert sum(counts.values()) == 500
    assert set(counts) <= {"000", "111"}


def test_incomplete_projectors_are_rejected():
    projectors, _ = computational_projectors(1)
    with pytest.raises(ValidationError):
        measure_projective(StateVector.zero(1), projectors[:1])


def _trine_effects() -> list[np.ndarray]:
    vecs = [np.array([math.cos(k * math.pi / 3), math.sin(k * math.pi / 3)]) for k in range(3)]
    return [2 / 3 * np.outer(v, v) for v in vecs]


def test_trine_povm_probabilities():
    probs = measure_povm(StateVector.zero(1), _trine_effects())
    assert probs == pytest.approx({"0": 2 / 3, "1": 1 / 6, "2": 1 / 6})


def test_sampled_povm_counts(rng):
    counts = measure_povm(StateVector.zero(1), _trine_effects(), shots=300, seed=rng,
                          labels=["a", "b", "c"])
    assert sum(counts.values()) == 300
    assert set(counts) <= {"a", "b", "c"}


def test_povm_effects_must_be_positive():
    with pytest.raises(ValidationError):
        measure_povm(StateVector.zero(1), [np.diag([1.5, 0.0]), np.diag([-0.5, 1.0])])


def test_expectation_of_pauli_observable():
    obs = Observable.from_pauli_terms([(0.5, "Z"), (0.5, "X")])
    assert expectation(StateVector.zero(1), obs) == pytest.approx(0.5)


def test_observable_terms_must_match_matrix():
    with pytest.raises(ValidationError):
        Observable(pauli_matrix("Z"), ((1.0, "X"),))


# ---------------------------------------------------------------------------
# Channels
# ---------------------------------------------------------------------------

@given(probabilities)
@settings(max_examples=40, deadline=None)
def test_depolarizing_purity_formula(p):
    out = apply_channel(StateVector.zero(1).density(), depolarizing_channel(p, 1))
    assert purity(out) == pytest.approx(1 - p + p * p / 2, abs=1e-12)


def test_channel_probabilities_outside_unit_interval():
    with pytest.raises(ArgumentError):
        depolarizing_channel(1.5, 1)


def test_pauli_channel_dilation_matches_kraus(rng):
    channel = pauli_channel(0.4, 0.3, 0.2, 0.1)
    u, env = kraus_dilation(channel)
    rho = random_density_matrix(1, rng)
    np.testing.assert_allclose(stinespring_apply(rho, u, env).matrix,
                               apply_channel(rho, channel).matrix, atol=1e-12)


def test_haar_unitary_is_unitary():
    u = haar_random_unitary(4, derive_stream(3, "haar"))
    np.testing.assert_allclose(u.conj().T @ u, np.eye(4), atol=1e-12)


def test_channel_algebra_criterion():
    assert check_channel_algebra(True, 0).passed


def test_dilation_criterion():
    assert check_dilation(True, 0).passed


@pytest.mark.slow
def test_haar_moment_criterion():
    assert check_haar_moments(False, 0).passed
