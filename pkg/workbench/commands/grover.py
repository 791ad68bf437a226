"""grover and qperceptron commands."""

from __future__ import annotations

import argparse
import logging

from qml.errors import ArgumentError
from qml.grover import (
    SearchProblem,
    classical_perceptron_sampling_baseline,
    grover_amplitude_trace,
    grover_search,
    loop_bounds,
    perceptron_scaling,
    quantum_perceptron_train,
)
from qml.learners import synth_margin_dataset
from qml.rng import derive_stream
from workbench.commands.base import Subparsers, add_command, result
from workbench.config import ExperimentConfig
from workbench.persistence import ResultRecord, Table

logger = logging.getLogger(__name__)


def grover(config: ExperimentConfig) -> ResultRecord:
    n = config.get_int("n", 10)
    m = config.get_int("m", 1)
    if n < 1:
        raise ArgumentError(f"need at least one qubit, got n={n}")
    if not 1 <= m <= 2**n:
        raise ArgumentError(f"marked count m={m} outside 1..{2**n}")
    marked = derive_stream(config.seed, "grover", "marked").choice(2**n, size=m, replace=False)
    problem = SearchProblem.from_indices(n, (int(i) for i in marked))
    diag = grover_search(problem, derive_stream(config.seed, "grover", "measure"))
    trace = grover_amplitude_trace(problem, diag.iterations)
    metrics = {
        "num_qubits": n,
        "num_solutions": problem.num_solutions,
        "iterations": diag.iterations,
        "theta": diag.theta,
        "success_prob": diag.success_prob_exact,
        "closed_form_success": diag.closed_form_alpha**2,
        "amplitude_error": trace.max_error,
        "measured_index": diag.index,
        "is_solution": diag.is_solution,
    }
    return result(config, metrics, {"marked": sorted(problem.marked)})


def qperceptron(config: ExperimentConfig) -> ResultRecord:
    gamma = config.get_float("gamma", 0.3)
    epsilon = config.get_float("epsilon", 0.1)
    c = config.get_float("c", 1.5)
    features = config.get_int("features", 8)
    if "dims" in config.params:
        report = perceptron_scaling(config.get_ints("dims", [64, 256, 1024]),
                                    config.get_int("seeds", 20), gamma, epsilon, c, features,
                                    config.seed)
        table = Table.from_dicts([
            {"d": r.dim, "median_quantum": r.median_quantum,
             "median_classical": r.median_classical, "quantum_success": r.quantum_success}
            for r in report.rows
        ])
        return result(config, {"quantum_exponent": report.quantum_exponent,
                               "classical_exponent": report.classical_exponent},
                      tables={"scaling": table})
    d = config.get_int("d", 256)
    data = synth_margin_dataset(d, features, gamma, derive_stream(config.seed, "data"))
    q = quantum_perceptron_train(data.features, data.labels, gamma, epsilon, c,
                                 derive_stream(config.seed, "quantum"))
    k = classical_perceptron_sampling_baseline(data.features, data.labels, gamma, epsilon,
                                               derive_stream(config.seed, "classical"))
    rounds, repeats, grover_rounds = loop_bounds(d, gamma, epsilon, c)
    metrics = {
        "d": d,
        "loop_bounds": {"rounds": rounds, "repeats": repeats, "grover_rounds": grover_rounds},
        "quantum": {**q.ledger.as_dict(), "converged": q.converged,
                    "training_errors": q.training_errors},
        "classical": {**k.ledger.as_dict(), "converged": k.converged,
                      "training_errors": k.training_errors},
    }
    return result(config, metrics, {"weights": q.weights})


def register(subparsers: Subparsers, parents: list[argparse.ArgumentParser]) -> None:
    p = add_command(subparsers, "grover", grover, "Grover search over a random marked set",
                    parents)
    p.add_argument("--n", type=int, default=None, help="qubits (default: 10)")
    p.add_argument("--m", type=int, default=None, help="marked items (default: 1)")

    p = add_command(subparsers, "qperceptron", qperceptron,
                    "Grover-accelerated online perceptron vs sampling baseline", parents)
    p.add_argument("--d", type=int, default=None, help="training points (default: 256)")
    p.add_argument("--features", type=int, default=None)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--c", type=float, default=None, help="Grover round growth factor in (1, 2)")
    p.add_argument("--dims", default=None, help="comma-separated sizes: run the scaling sweep")
    p.add_argument("--seeds", type=int, default=None, help="seeds per size in the sweep")
