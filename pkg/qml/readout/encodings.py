"""
Classical-to-quantum read-in.

Responsibilities:
- Basis, amplitude, angle and QRAM encodings
- EncodedInput record tying the prepared state to its source data
"""

from __future__ import annotations

import enum
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from functools import reduce
from typing import Any

import numpy as np
from numpy.typing import ArrayLike

from qml.errors import ArgumentError
from qml.linalg import ceil_qubits, pad_vector
from qml.sim.gates import rotation
from qml.sim.states import StateVector

logger = logging.getLogger(__name__)


class EncodingKind(enum.Enum):
    BASIS = "basis"
    AMPLITUDE = "amplitude"
    ANGLE = "angle"
    QRAM = "qram"


@dataclass(frozen=True, slots=True, eq=False)
class EncodedInput:
    state: StateVector
    encoding_kind: EncodingKind
    source: Any


def _bits(values: ArrayLike) -> list[int]:
    arr = np.asarray(values).reshape(-1)
    out = []
    for v in arr:
        if v not in (0, 1):
            raise ArgumentError(f"basis encoding needs entries in {{0, 1}}, got {v!r}")
        out.append(int(v))
    return out


def encode_basis(bits: ArrayLike) -> EncodedInput:
    """|x₀ … x_{N−1}⟩ with x₀ on qubit 0."""
    b = _bits(bits)
    return EncodedInput(StateVector.from_bits(b), EncodingKind.BASIS, tuple(b))


def encode_amplitude(x: ArrayLike) -> EncodedInput:
    """x/‖x‖₂ padded with zeros to the next power of two."""
    vec = np.asarray(x, dtype=np.complex128).reshape(-1)
    norm = float(np.linalg.norm(vec))
    if vec.size == 0 or norm == 0.0:
        raise ArgumentError("amplitude encoding of a zero vector")
    length = 2 ** ceil_qubits(vec.size)
    return EncodedInput(StateVector(pad_vector(vec / norm, length)), EncodingKind.AMPLITUDE, vec)


def encode_angle(x: ArrayLike, axis: str = "X") -> EncodedInput:
    """⊗ᵢ exp(−i xᵢ σ/2)|0⟩; scaling into range is the caller's job."""
    vec = np.asarray(x, dtype=float).reshape(-1)
    if vec.size == 0:
        raise ArgumentError("angle encoding needs at least one feature")
    if not np.all(np.isfinite(vec)):
        raise ArgumentError("angle encoding needs finite features")
    if np.any(vec < 0.0) or np.any(vec >= 2 * math.pi):
        logger.warning("angle features outside [0, 2π): min=%.4g max=%.4g", vec.min(), vec.max())
    zero = np.array([1.0, 0.0], dtype=np.complex128)
    qubits = [rotation(axis, float(v)).matrix @ zero for v in vec]
    return EncodedInput(StateVector(reduce(np.kron, qubits)), EncodingKind.ANGLE, vec)


def encode_qram(dataset: Sequence[ArrayLike]) -> EncodedInput:
    """Σⱼ M^{-1/2} |j⟩_address |x⁽ʲ⁾⟩_data, built directly as a state."""
    rows = [_bits(row) for row in dataset]
    if not rows:
        raise ArgumentError("QRAM encoding of an empty dataset")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ArgumentError("QRAM items must share one bit length")
    address_qubits = ceil_qubits(len(rows))
    amps = np.zeros(2 ** (address_qubits + width), dtype=np.complex128)
    for j, row in enumerate(rows):
        data_index = int("".join(map(str, row)) or "0", 2)
        amps[(j << width) | data_index] += 1.0
    amps /= np.linalg.norm(amps)
    return EncodedInput(StateVector(amps), EncodingKind.QRAM, tuple(map(tuple, rows)))
