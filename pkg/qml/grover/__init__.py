"""Grover search and the Grover-accelerated online perceptron."""

from qml.grover.perceptron import (
    PerceptronRun,
    QueryLedger,
    ScalingReport,
    ScalingRow,
    classical_batch_size,
    classical_perceptron_sampling_baseline,
    loop_bounds,
    misclassified,
    perceptron_scaling,
    quantum_perceptron_train,
)
from qml.grover.search import (
    AmplitudeTrace,
    GroverDiagnostics,
    SearchProblem,
    diffuse,
    grover_amplitude_trace,
    grover_iterate,
    grover_search,
    optimal_iterations,
    phase_oracle,
    run_grover,
    uniform_state,
    zero_reflection,
)

__all__ = [
    "AmplitudeTrace",
    "GroverDiagnostics",
    "PerceptronRun",
    "QueryLedger",
    "ScalingReport",
    "ScalingRow",
    "SearchProblem",
    "classical_batch_size",
    "classical_perceptron_sampling_baseline",
    "diffuse",
    "grover_amplitude_trace",
    "grover_iterate",
    "grover_search",
    "loop_bounds",
    "misclassified",
    "optimal_iterations",
    "perceptron_scaling",
    "phase_oracle",
    "quantum_perceptron_train",
    "run_grover",
    "uniform_state",
    "zero_reflection",
]
