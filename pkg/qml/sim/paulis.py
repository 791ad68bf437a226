"""Pauli matrices and Pauli strings over {I, X, Y, Z}^N."""

from __future__ import annotations

import itertools
from collections.abc import Iterator
from functools import reduce

import numpy as np

from qml.errors import ArgumentError
from qml.linalg import ComplexArray

PAULI_LETTERS = "IXYZ"

PAULI_MATRICES: dict[str, ComplexArray] = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def validate_pauli_string(label: str) -> str:
    label = label.upper()
    bad = sorted({ch for ch in label if ch not in PAULI_LETTERS})
    if bad:
        raise ArgumentError(f"invalid Pauli letter(s) {bad} in {label!r}")
    return label


def pauli_matrix(label: str) -> ComplexArray:
    """Dense matrix of a Pauli string; letter 0 acts on qubit 0 (leftmost factor)."""
    label = validate_pauli_string(label)
    if not label:
        return np.ones((1, 1), dtype=np.complex128)
    return reduce(np.kron, (PAULI_MATRICES[ch] for ch in label))


def pauli_strings(num_qubits: int, *, include_identity: bool = True) -> Iterator[str]:
    """All Pauli strings in lexicographic order over I < X < Y < Z."""
    for letters in itertools.product(PAULI_LETTERS, repeat=num_qubits):
        label = "".join(letters)
        if include_identity or label != "I" * num_qubits:
            yield label
