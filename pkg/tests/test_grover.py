from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import linalg

from qml.errors import ArgumentError, NoSolutionError, ValidationError
from qml.grover import (
    QueryLedger,
    SearchProblem,
    classical_batch_size,
    classical_perceptron_sampling_baseline,
    diffuse,
    grover_amplitude_trace,
    grover_iterate,
    grover_search,
    loop_bounds,
    optimal_iterations,
    perceptron_scaling,
    phase_oracle,
    quantum_perceptron_train,
    run_grover,
    uniform_state,
    zero_reflection,
)
from qml.learners import synth_margin_dataset
from workbench.acceptance import check_grover, check_qperceptron_scaling


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------

def test_two_qubit_search_is_exact():
    problem = SearchProblem.from_indices(2, [3])
    assert optimal_iterations(problem.dim, 1) == 1
    diag = grover_search(problem, seed=0)
    assert diag.success_prob_exact == pytest.approx(1.0)
    assert diag.index == 3 and diag.is_solution


def test_four_qubit_search_matches_closed_form():
    problem = SearchProblem.from_indices(4, [5])
    diag = grover_search(problem, seed=1)
    assert diag.iterations == 2
    assert diag.theta == pytest.approx(math.asin(0.25))
    assert diag.success_prob_exact == pytest.approx(diag.closed_form_alpha**2, abs=1e-12)
    assert diag.success_prob_exact > 0.9


@given(st.integers(2, 7), st.data())
@settings(max_examples=30, deadline=None)
def test_amplitude_trace_follows_rotation(n, data):
    marked = data.draw(st.sets(st.integers(0, 2**n - 1), min_size=1, max_size=3))
    trace = grover_amplitude_trace(SearchProblem.from_indices(n, marked), 8)
    assert trace.max_error <= 1e-9


def test_every_index_marked():
    problem = SearchProblem.from_indices(1, [0, 1])
    assert grover_amplitude_trace(problem, 3).max_error <= 1e-12
    assert grover_search(problem, seed=0).is_solution


def test_no_solution_is_reported():
    problem = SearchProblem.from_indices(3, [])
    with pytest.raises(NoSolutionError):
        grover_search(problem)
    with pytest.raises(NoSolutionError):
        grover_amplitude_trace(problem, 2)
    with pytest.raises(NoSolutionError):
        optimal_iterations(8, 0)


def test_search_problem_validation():
    with pytest.raises(ValidationError):
        SearchProblem.from_indices(2, [4])
    with pytest.raises(ArgumentError):
        SearchProblem.from_indices(0, [])
    with pytest.raises(ArgumentError):
        grover_amplitude_trace(SearchProblem.from_indices(2, [1]), -1)


def test_diffusion_fixes_uniform_state():
    psi = uniform_state(16)
    np.testing.assert_allclose(diffuse(psi), psi, atol=1e-15)
    np.testing.assert_allclose(np.linalg.norm(run_grover(SearchProblem.from_indices(4, [2]), 5)),
                               1.0, atol=1e-12)


def test_grover_iterate_matches_dense_circuit(rng):
    problem = SearchProblem.from_indices(3, [5])
    h = linalg.hadamard(8) / math.sqrt(8)
    dense = h @ np.diag(zero_reflection(3)) @ h @ np.diag(phase_oracle(problem))
    psi = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    psi /= np.linalg.norm(psi)
    np.testing.assert_allclose(grover_iterate(psi, phase_oracle(problem)), dense @ psi,
                               atol=1e-12)
    np.testing.assert_array_equal(zero_reflection(2), [1.0, -1.0, -1.0, -1.0])


def test_grover_iterate_rejects_dimension_mismatch():
    with pytest.raises(ArgumentError):
        grover_iterate(uniform_state(4), np.ones(8))


def test_grover_criterion():
    assert check_grover(True, 0).passed


# ---------------------------------------------------------------------------
# Quantum perceptron
# ---------------------------------------------------------------------------

def test_loop_bounds():
    assert loop_bounds(16, 0.5, 0.1, 1.5) == (4, 13, 2)
    assert loop_bounds(1, 0.5, 0.1, 1.5) == (4, 13, 1)


def test_classical_batch_size():
    assert classical_batch_size(10, 0.5, 0.1) == 40


def test_ledger_rejects_negative_counts():
    ledger = QueryLedger()
    ledger.charge_oracle(3, "search")
    ledger.charge_classical(1, "verify")
    assert ledger.as_dict()["phases"] == {"oracle/search": 3, "classical/verify": 1}
    with pytest.raises(ArgumentError):
        ledger.charge_oracle(-1, "search")
    with pytest.raises(ArgumentError):
        ledger.charge_classical(-1, "verify")


def test_quantum_perceptron_separates_margin_data():
    data = synth_margin_dataset(32, 4, 0.3, seed=5)
    run = quantum_perceptron_train(data.features, data.labels, 0.3, 0.01, seed=0)
    assert run.converged
    assert run.training_errors == 0
    assert run.ledger.updates <= math.ceil(1 / 0.3**2)
    # one classical verification per Grover call
    assert run.ledger.classical_evaluations == run.ledger.grover_calls


def test_quantum_perceptron_argument_checks():
    data = synth_margin_dataset(8, 3, 0.3, seed=1)
    with pytest.raises(ArgumentError):
        quantum_perceptron_train(data.features, data.labels, 0.3, 0.1, c=2.0)
    with pytest.raises(ArgumentError):
        quantum_perceptron_train(data.features, data.labels, 1.2, 0.1)
    with pytest.raises(ArgumentError):
        quantum_perceptron_train(data.features, data.labels, 0.3, 0.1, initial_weights=[1.0])


def test_classical_baseline_counts_evaluations():
    data = synth_margin_dataset(32, 4, 0.3, seed=6)
    run = classical_perceptron_sampling_baseline(data.features, data.labels, 0.3, 0.1, seed=0)
    assert run.ledger.oracle_queries == 0
    assert run.ledger.classical_evaluations > 0
    assert run.ledger.updates <= math.ceil(1 / 0.3**2)


def test_scaling_needs_two_sizes():
    with pytest.raises(ArgumentError):
        perceptron_scaling([16], 1)


@pytest.mark.slow
def test_perceptron_scaling_criterion():
    assert check_qperceptron_scaling(True, 0).passed
