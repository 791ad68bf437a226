from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qml.errors import ArgumentError, ParseError, ValidationError
from qml.readout import (
    AngleKernelForm,
    EncodingKind,
    angle_kernel_fixture,
    encode_amplitude,
    encode_angle,
    encode_basis,
    encode_qram,
    estimate_observable,
    estimate_pauli_expectation,
    pauli_decompose,
    qst_linear_inversion,
    qst_mle,
    read_records,
    simulate_pauli_settings,
    write_records,
)
from qml.sim import Observable, StateVector, random_density_matrix, trace_distance
from qml.sim.circuit import named_state
from qml.sim.paulis import pauli_matrix
from workbench.acceptance import check_tomography

angles = st.floats(0.0, 2 * math.pi, exclude_max=True, allow_nan=False)


# ---------------------------------------------------------------------------
# Encodings
# ---------------------------------------------------------------------------

def test_basis_encoding_places_first_bit_on_qubit_zero():
    enc = encode_basis([1, 0, 1])
    assert enc.encoding_kind is EncodingKind.BASIS
    assert enc.state.probabilities()[0b101] == pytest.approx(1.0)


def test_basis_encoding_rejects_non_bits():
    with pytest.raises(ArgumentError):
        encode_basis([0, 2])


def test_amplitude_encoding_pads_to_power_of_two():
    enc = encode_amplitude([3.0, 4.0, 0.0])
    assert enc.state.amplitudes.size == 4
    np.testing.assert_allclose(enc.state.amplitudes.real, [0.6, 0.8, 0.0, 0.0])


def test_amplitude_encoding_of_zero_vector():
    with pytest.raises(ArgumentError):
        encode_amplitude([0.0, 0.0])


@given(st.lists(angles, min_size=1, max_size=3), st.lists(angles, min_size=1, max_size=3))
@settings(max_examples=50, deadline=None)
def test_angle_overlap_matches_half_angle_closed_form(x, xp):
    size = min(len(x), len(xp))
    x, xp = x[:size], xp[:size]
    overlap = abs(encode_angle(x).state.inner(encode_angle(xp).state)) ** 2
    assert overlap == pytest.approx(angle_kernel_fixture(x, xp), abs=1e-12)


def test_full_angle_form_differs_from_half_angle():
    half = angle_kernel_fixture([1.0], [0.0], AngleKernelForm.HALF_ANGLE)
    full = angle_kernel_fixture([1.0], [0.0], "full_angle")
    assert half == pytest.approx(math.cos(0.5) ** 2)
    assert full == pytest.approx(math.cos(1.0) ** 2)


def test_angle_encoding_warns_outside_period(caplog):
    encode_angle([7.0])
    assert "outside [0, 2π)" in caplog.text


def test_qram_superposes_address_and_data():
    enc = encode_qram([[0, 1], [1, 1]])
    probs = enc.state.probabilities()
    assert probs[0b001] == pytest.approx(0.5)
    assert probs[0b111] == pytest.approx(0.5)


def test_qram_rejects_ragged_items():
    with pytest.raises(ArgumentError):
        encode_qram([[0, 1], [1]])


# ---------------------------------------------------------------------------
# Estimation
# ---------------------------------------------------------------------------

def test_exact_pauli_expectation_on_bell_state():
    bell = named_state("bell", 2)
    assert estimate_pauli_expectation(bell, "ZZ") == pytest.approx(1.0)
    assert estimate_pauli_expectation(bell, "XX") == pytest.approx(1.0)
    assert estimate_pauli_expectation(bell, "ZI") == pytest.approx(0.0, abs=1e-12)


def test_sampled_expectation_is_close(rng):
    plus = named_state("plus", 1)
    assert estimate_pauli_expectation(plus, "X", shots=2000, seed=rng) == pytest.approx(1.0)
    est = estimate_pauli_expectation(StateVector.zero(1), "X", shots=20_000, seed=rng)
    assert abs(est) < 0.05


def test_pauli_string_length_must_match():
    with pytest.raises(ArgumentError):
        estimate_pauli_expectation(StateVector.zero(1), "XX")


def test_observable_estimate_sums_terms(rng):
    bell = named_state("bell", 2)
    obs = Observable.from_pauli_terms([(0.5, "ZZ"), (0.25, "XX")])
    assert estimate_observable(bell, obs) == pytest.approx(0.75)
    # every ZZ and XX outcome on the Bell state is +1
    assert estimate_observable(bell, obs, shots_per_term=200, seed=rng) == pytest.approx(0.75)


def test_observable_estimate_needs_decomposition():
    with pytest.raises(ValidationError):
        estimate_observable(StateVector.zero(1), Observable(pauli_matrix("Z")))


def test_pauli_decompose_reconstructs(rng):
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    h = g + g.conj().T
    rebuilt = sum(c * pauli_matrix(p) for c, p in pauli_decompose(h))
    np.testing.assert_allclose(rebuilt, h, atol=1e-12)


def test_pauli_decompose_rejects_non_hermitian():
    with pytest.raises(ValidationError):
        pauli_decompose(np.array([[0, 1], [0, 0]]))


# ---------------------------------------------------------------------------
# Tomography
# ---------------------------------------------------------------------------

def test_linear_inversion_is_exact_on_exact_records(rng):
    truth = random_density_matrix(2, rng)
    result = qst_linear_inversion(simulate_pauli_settings(truth), truth)
    assert trace_distance(result.rho_hat, truth) < 1e-10
    assert result.settings_used == 9


def test_mle_log_likelihood_is_monotone(rng):
    truth = random_density_matrix(1, rng)
    records = simulate_pauli_settings(truth, 200, rng)
    result = qst_mle(records, truth, max_iterations=500)
    assert np.all(np.diff(result.log_likelihoods) >= -1e-12)
    assert result.rho_hat.min_eigenvalue() >= -1e-12


def test_mle_stall_is_not_reported_as_converged(monkeypatch, caplog, rng):
    def flat_at_start(rho, effects, freqs):
        return 0.0 if np.allclose(rho, np.eye(rho.shape[0]) / rho.shape[0]) else -1.0

    monkeypatch.setattr("qml.readout.tomography._log_likelihood", flat_at_start)
    records = simulate_pauli_settings(random_density_matrix(1, rng))
    result = qst_mle(records, max_iterations=50)
    assert result.converged is False
    assert result.iterations == 1
    assert result.log_likelihoods == (0.0,)
    assert "stalled" in caplog.text
    assert "iteration cap" not in caplog.text


def test_records_round_trip_through_jsonl(tmp_path, rng):
    records = simulate_pauli_settings(named_state("bell", 2), 100, rng)
    path = tmp_path / "records.jsonl"
    assert write_records(path, records) == len(records)
    assert read_records(path) == records


def test_malformed_record_reports_line(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text('{"setting": "Z", "counts": {"0": 3}}\n{"setting": "Q"}\n', encoding="utf-8")
    with pytest.raises(ParseError) as info:
        read_records(path)
    assert info.value.line == 2


def test_tomography_criterion_quick():
    assert check_tomography(True, 0).passed
