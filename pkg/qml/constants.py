"""
Library constants.

Shared numeric defaults used across the library and the CLI.
These are the canonical definitions; config overrides start from here.
"""

import math

# Simulator limits
DEFAULT_MAX_QUBITS: int = 14
DEFAULT_COMPOSE_QUBIT_LIMIT: int = 10  # explicit composed unitaries above this are re-dilated

# Tolerances
NORM_TOL: float = 1e-10
UNITARY_TOL: float = 1e-9
HERMITIAN_TOL: float = 1e-10
TRACE_PRESERVING_TOL: float = 1e-9
PSD_TOL: float = 1e-9
COMPLETENESS_TOL: float = 1e-9
IMAG_TOL: float = 1e-9
ZERO_SINGULAR_VALUE: float = 1e-12
DEGENERATE_NORM: float = 1e-12

# Tomography
MLE_DILUTION: float = 0.5
MLE_MAX_ITERATIONS: int = 10_000
MLE_STOP_CHANGE: float = 1e-10
PROBABILITY_FLOOR: float = 1e-12

# Kernels
GEOMETRIC_REGULARIZER: float = 1e-10
FOURIER_CONDITION_LIMIT: float = 1e8
FOURIER_MAX_QUBITS: int = 3

# Learners
PERCEPTRON_MAX_PASSES: int = 1_000_000
ADAM_BETA1: float = 0.9
ADAM_BETA2: float = 0.999
ADAM_EPS: float = 1e-8
QGAN_RESCALE_GUARD: float = 1e-8
QGAN_MIN_POSTSELECT: float = 1e-9
QGAN_MAX_RESAMPLES: int = 100
COVERING_EPSILON: float = 0.05

# Polynomial approximations
POLY_MIN_EPSILON: float = 1e-13
POLY_GRID_POINTS: int = 10_000
POLY_MAX_DEGREE: int = 200
QSVT_BOUND: float = 0.25

# Grover
QUARTER_PI: float = math.pi / 4
