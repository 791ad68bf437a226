"""
Quantum channels in Kraus form.

Responsibilities:
- QuantumChannel record with the trace-preservation check
- Depolarizing and single-qubit Pauli channels
- Kraus application and the equivalent Stinespring dilation
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike
from scipy import linalg

from qml.constants import TRACE_PRESERVING_TOL
from qml.errors import ArgumentError, ValidationError
from qml.linalg import ComplexArray, as_complex, dagger, is_unitary, qubits_for_dim
from qml.sim.paulis import pauli_matrix, pauli_strings
from qml.sim.states import DensityMatrix, State, StateVector, partial_trace, to_density

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True, eq=False)
class QuantumChannel:
    """CPTP map ρ ↦ Σ_a M_a ρ M_a†."""

    kraus_ops: tuple[ComplexArray, ...]
    label: str = "channel"

    def __post_init__(self) -> None:
        ops = tuple(as_complex(m) for m in self.kraus_ops)
        if not ops:
            raise ValidationError("a channel needs at least one Kraus operator")
        dim = ops[0].shape[0]
        if any(m.shape != (dim, dim) for m in ops):
            raise ValidationError("Kraus operators must share one square shape")
        total = sum(dagger(m) @ m for m in ops)
        if not np.allclose(total, np.eye(dim), atol=TRACE_PRESERVING_TOL, rtol=0.0):
            raise ValidationError(f"{self.label}: Kraus set is not trace preserving")
        object.__setattr__(self, "kraus_ops", ops)

    @property
    def dim(self) -> int:
        return int(self.kraus_ops[0].shape[0])

    @property
    def num_qubits(self) -> int:
        return qubits_for_dim(self.dim)


def _check_probability(name: str, p: float) -> float:
    if not 0.0 <= p <= 1.0 or math.isnan(p):
        raise ArgumentError(f"{name}={p} is outside [0, 1]")
    return float(p)


def depolarizing_channel(p: float, num_qubits: int = 1) -> QuantumChannel:
    """N_p(ρ) = (1 − p)ρ + p I/2^N, written over the N-qubit Pauli group."""
    p = _check_probability("p", p)
    weight = p / 4**num_qubits
    ops = [
        math.sqrt((1.0 - p + weight) if label == "I" * num_qubits else weight)
        * pauli_matrix(label)
        for label in pauli_strings(num_qubits)
    ]
    return QuantumChannel(tuple(ops), f"depolarizing(p={p})")


def pauli_channel(p_i: float, p_x: float, p_y: float, p_z: float) -> QuantumChannel:
    """Single-qubit Pauli channel Σ p_σ σρσ."""
    probs = [_check_probability(name, v) for name, v in
             (("p_I", p_i), ("p_X", p_x), ("p_Y", p_y), ("p_Z", p_z))]
    if abs(sum(probs) - 1.0) > TRACE_PRESERVING_TOL:
        raise ArgumentError(f"Pauli probabilities sum to {sum(probs)}, expected 1")
    ops = [math.sqrt(p) * pauli_matrix(s) for p, s in zip(probs, "IXYZ", strict=True)]
    return QuantumChannel(tuple(ops), "pauli")


def apply_channel(rho: State, channel: QuantumChannel) -> DensityMatrix:
    d = to_density(rho)
    if d.matrix.shape[0] != channel.dim:
        raise ArgumentError(
            f"channel acts on dimension {channel.dim}, state has {d.matrix.shape[0]}"
        )
    out = sum(m @ d.matrix @ dagger(m) for m in channel.kraus_ops)
    return DensityMatrix(np.asarray(out))


# ---------------------------------------------------------------------------
# Stinespring dilation
# ---------------------------------------------------------------------------

def kraus_dilation(channel: QuantumChannel) -> tuple[ComplexArray, StateVector]:
    """Unitary on system⊗environment and environment state |0⟩ realizing *channel*.

    The isometry |ψ⟩|0⟩ ↦ Σ_a M_a|ψ⟩|a⟩ fixes the columns with environment
    index 0; the remaining columns are an orthonormal completion.
    """
    ops: Sequence[ComplexArray] = channel.kraus_ops
    env_qubits = max(1, math.ceil(math.log2(len(ops))))
    env_dim = 2**env_qubits
    dim = channel.dim
    isometry = np.zeros((dim * env_dim, dim), dtype=np.complex128)
    for a, m in enumerate(ops):
        isometry[a::env_dim, :] = m
    complement = linalg.null_space(dagger(isometry))
    unitary = np.zeros((dim * env_dim, dim * env_dim), dtype=np.complex128)
    fixed = [j * env_dim for j in range(dim)]
    free = [c for c in range(dim * env_dim) if c % env_dim]
    unitary[:, fixed] = isometry
    unitary[:, free] = complement
    return unitary, StateVector.zero(env_qubits)


def stinespring_apply(rho: State, dilation: ArrayLike, env_state: StateVector) -> DensityMatrix:
    """N(ρ) = Tr_E(U (ρ ⊗ |φ⟩⟨φ|) U†) with the environment as the trailing qubits."""
    d = to_density(rho)
    u = as_complex(dilation)
    total = d.matrix.shape[0] * env_state.amplitudes.size
    if u.shape != (total, total):
        raise ArgumentError(
            f"dilation of shape {u.shape} does not act on system⊗environment ({total})"
        )
    if not is_unitary(u, TRACE_PRESERVING_TOL):
        raise ValidationError("dilation is not unitary")
    env = np.outer(env_state.amplitudes, env_state.amplitudes.conj())
    joint = u @ np.kron(d.matrix, env) @ dagger(u)
    joint = (joint + dagger(joint)) / 2
    return partial_trace(DensityMatrix(joint), range(d.num_qubits))
