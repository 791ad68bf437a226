"""Kernel machines: quantum and classical kernels, dual ridge regression, advantage diagnostics."""

from qml.kernels.advantage import (
    AdversarialLabels,
    GeometricDifference,
    adversarial_dataset,
    geometric_difference,
    normalize_trace,
)
from qml.kernels.c2qe import c2qe_embed, c2qe_qubits, c2qe_sample
from qml.kernels.feature_maps import FeatureMapKind, FeatureMapSpec
from qml.kernels.fourier import FourierTable, kernel_fourier_decompose
from qml.kernels.kernels import (
    ClassicalKernelKind,
    ClassicalKernelSpec,
    KernelMatrix,
    adjoint_kernel,
    classical_kernel,
    evaluate_kernel,
    kernel_matrix,
    kernel_vector,
    quantum_kernel,
    swap_test_kernel,
)
from qml.kernels.ridge import (
    ModelComplexity,
    RidgeModel,
    RiskBounds,
    kernel_risk_bounds,
    model_complexity,
    ridge_fit,
    ridge_predict,
)

__all__ = [
    "AdversarialLabels",
    "ClassicalKernelKind",
    "ClassicalKernelSpec",
    "FeatureMapKind",
    "FeatureMapSpec",
    "FourierTable",
    "GeometricDifference",
    "KernelMatrix",
    "ModelComplexity",
    "RidgeModel",
    "RiskBounds",
    "adjoint_kernel",
    "adversarial_dataset",
    "c2qe_embed",
    "c2qe_qubits",
    "c2qe_sample",
    "classical_kernel",
    "evaluate_kernel",
    "geometric_difference",
    "kernel_fourier_decompose",
    "kernel_matrix",
    "kernel_risk_bounds",
    "kernel_vector",
    "model_complexity",
    "normalize_trace",
    "quantum_kernel",
    "ridge_fit",
    "ridge_predict",
    "swap_test_kernel",
]
