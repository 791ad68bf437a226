"""
Quantum feature maps x ↦ |φ(x)⟩.

Each kind maps one-to-one onto a read-in encoding; the map also exposes its
preparation unitary U(x) so kernels can be estimated by circuit.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import reduce

import numpy as np
from numpy.typing import ArrayLike

from qml.errors import ArgumentError
from qml.linalg import ComplexArray, complete_unitary
from qml.readout.encodings import encode_amplitude, encode_angle, encode_basis
from qml.sim import gates
from qml.sim.states import StateVector


class FeatureMapKind(enum.Enum):
    BASIS = "basis"
    AMPLITUDE = "amplitude"
    ANGLE_X = "angleX"
    ANGLE_Y = "angleY"
    SINGLE_QUBIT_RX = "single_qubit_rx"


@dataclass(frozen=True, slots=True)
class FeatureMapSpec:
    kind: FeatureMapKind
    qubit_budget: int | None = None
    scaling_note: str = ""

    @classmethod
    def parse(cls, name: str) -> FeatureMapSpec:
        try:
            return cls(FeatureMapKind(name))
        except ValueError:
            choices = ", ".join(k.value for k in FeatureMapKind)
            raise ArgumentError(f"unknown feature map {name!r} (choose from {choices})") from None

    @property
    def label(self) -> str:
        return self.kind.value

    def _check_budget(self, num_qubits: int) -> None:
        if self.qubit_budget is not None and num_qubits > self.qubit_budget:
            raise ArgumentError(
                f"{self.label} map needs {num_qubits} qubits, budget is {self.qubit_budget}"
            )

    def encode(self, x: ArrayLike) -> StateVector:
        vec = np.asarray(x).reshape(-1)
        match self.kind:
            case FeatureMapKind.BASIS:
                state = encode_basis(vec).state
            case FeatureMapKind.AMPLITUDE:
                state = encode_amplitude(vec).state
            case FeatureMapKind.ANGLE_X:
                state = encode_angle(vec, "X").state
            case FeatureMapKind.ANGLE_Y:
                state = encode_angle(vec, "Y").state
            case FeatureMapKind.SINGLE_QUBIT_RX:
                if vec.size != 1:
                    raise ArgumentError("single_qubit_rx takes exactly one feature")
                state = encode_angle(vec, "X").state
        self._check_budget(state.num_qubits)
        return state

    def unitary(self, x: ArrayLike) -> ComplexArray:
        """U(x) with U(x)|0…0⟩ = |φ(x)⟩."""
        vec = np.asarray(x).reshape(-1)
        match self.kind:
            case FeatureMapKind.ANGLE_X | FeatureMapKind.ANGLE_Y | FeatureMapKind.SINGLE_QUBIT_RX:
                self.encode(vec)
                axis = "Y" if self.kind is FeatureMapKind.ANGLE_Y else "X"
                return reduce(np.kron, [gates.rotation(axis, float(v)).matrix for v in vec])
            case FeatureMapKind.BASIS:
                self.encode(vec)
                flips = [gates.X.matrix if b else gates.I.matrix for b in vec.astype(int)]
                return reduce(np.kron, flips, np.ones((1, 1), dtype=np.complex128))
            case FeatureMapKind.AMPLITUDE:
                return complete_unitary(self.encode(vec).amplitudes)
        raise ArgumentError(f"no circuit for {self.label}")
