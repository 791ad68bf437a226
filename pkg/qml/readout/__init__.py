"""Read-in encodings, Pauli read-out and state tomography."""

from qml.readout.encodings import (
    EncodedInput,
    EncodingKind,
    encode_amplitude,
    encode_angle,
    encode_basis,
    encode_qram,
)
from qml.readout.estimation import (
    estimate_observable,
    estimate_pauli_expectation,
    pauli_decompose,
    sample_bitstrings,
)
from qml.readout.tomography import (
    AngleKernelForm,
    MeasurementRecord,
    TomographyMethod,
    TomographyResult,
    angle_kernel_fixture,
    qst_linear_inversion,
    qst_mle,
    read_records,
    simulate_pauli_settings,
    write_records,
)

__all__ = [
    "AngleKernelForm",
    "EncodedInput",
    "EncodingKind",
    "MeasurementRecord",
    "TomographyMethod",
    "TomographyResult",
    "angle_kernel_fixture",
    "encode_amplitude",
    "encode_angle",
    "encode_basis",
    "encode_qram",
    "estimate_observable",
    "estimate_pauli_expectation",
    "pauli_decompose",
    "qst_linear_inversion",
    "qst_mle",
    "read_records",
    "sample_bitstrings",
    "simulate_pauli_settings",
    "write_records",
]
