"""
Barren-plateau variance experiment.

For each register size N, sample random parameter vectors of a hardware-
efficient circuit and record the parameter-shift derivative of
f(θ) = ⟨0|V†OV|0⟩ with respect to one RY angle in the middle layer.
The leading-order prediction for a full-weight Pauli observable and a pure
input is 2^{−(N+1)}; two_design_variance gives the exact value for a
circuit whose two halves are exact unitary 2-designs.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np

from qml.errors import ArgumentError
from qml.learners.circuits import ParamCircuit, build_hec
from qml.rng import derive_stream
from qml.sim.states import StateVector

logger = logging.getLogger(__name__)

_MIN_SAMPLES = 1_000


class DepthPolicy(Enum):
    TWO_DESIGN = "two_design"
    SHALLOW_LOCAL = "shallow_local"
    GAUSSIAN_INIT = "gaussian_init"


@dataclass(frozen=True, slots=True)
class BPRow:
    num_qubits: int
    layers: int
    samples: int
    mean_grad: float
    var_grad: float
    predicted_var: float

    @property
    def ratio(self) -> float:
        return self.var_grad / self.predicted_var

    @property
    def mean_sigmas(self) -> float:
        """|mean| in units of its standard error."""
        se = math.sqrt(self.var_grad / self.samples) if self.var_grad > 0 else math.inf
        return abs(self.mean_grad) / se


def predicted_variance(num_qubits: int) -> float:
    """Tr[O²]Tr[ρ²]Tr[P²] / 2^{3N+1} = 2^{−(N+1)}."""
    return 2.0 ** (2 * num_qubits) / 2.0 ** (3 * num_qubits + 1)


def two_design_variance(num_qubits: int) -> float:
    """2D·Tr[G²]·Tr[O²]·(1 − 1/D) / (D² − 1)² with G = P/2 and traceless O, P."""
    d = 2.0**num_qubits
    return 2 * d * (d / 4) * d * (1 - 1 / d) / (d * d - 1) ** 2


def _z_diagonal(num_qubits: int, wires: Sequence[int]) -> np.ndarray:
    idx = np.arange(2**num_qubits)
    parity = np.zeros_like(idx)
    for q in wires:
        parity ^= (idx >> (num_qubits - 1 - q)) & 1
    return 1.0 - 2.0 * parity


def _value(circuit: ParamCircuit, theta: np.ndarray, diag: np.ndarray) -> float:
    out = circuit.apply(theta, StateVector.zero(circuit.num_qubits))
    assert isinstance(out, StateVector)
    return float(np.sum(np.abs(out.amplitudes) ** 2 * diag))


def _setup(num_qubits: int, policy: DepthPolicy) -> tuple[ParamCircuit, np.ndarray, int]:
    layers = 1 if policy is DepthPolicy.SHALLOW_LOCAL else 2 * num_qubits
    circuit = build_hec(num_qubits, layers, "CZ")
    wires = [0] if policy is DepthPolicy.SHALLOW_LOCAL else list(range(num_qubits))
    slot = (layers // 2) * 3 * num_qubits + 1
    return circuit, _z_diagonal(num_qubits, wires), slot


def bp_variance_experiment(
    qubit_counts: Sequence[int],
    samples: int,
    policy: DepthPolicy | str = DepthPolicy.TWO_DESIGN,
    seed: int = 0,
) -> list[BPRow]:
    policy = DepthPolicy(policy)
    if samples < 2:
        raise ArgumentError("need at least two samples per register size")
    if samples < _MIN_SAMPLES:
        logger.warning("BP experiment with %d samples; variance estimates will be noisy", samples)
    rows = []
    for n in qubit_counts:
        if n < 1:
            raise ArgumentError(f"register size must be positive, got {n}")
        circuit, diag, slot = _setup(n, policy)
        rng = derive_stream(seed, "bp", policy.value, n)
        grads = np.empty(samples)
        for s in range(samples):
            if policy is DepthPolicy.GAUSSIAN_INIT:
                theta = rng.normal(0.0, math.sqrt(1.0 / circuit.layers), circuit.num_params)
            else:
                theta = rng.uniform(0.0, 2 * math.pi, circuit.num_params)
            plus, minus = theta.copy(), theta.copy()
            plus[slot] += math.pi / 2
            minus[slot] -= math.pi / 2
            grads[s] = 0.5 * (_value(circuit, plus, diag) - _value(circuit, minus, diag))
        row = BPRow(n, circuit.layers, samples, float(grads.mean()), float(grads.var(ddof=1)),
                    predicted_variance(n))
        logger.info("BP N=%d L=%d: mean %.3e, var %.4e, predicted %.4e (ratio %.2f)",
                    n, row.layers, row.mean_grad, row.var_grad, row.predicted_var, row.ratio)
        rows.append(row)
    return rows


def variance_slope(rows: Sequence[BPRow]) -> float:
    """Least-squares slope of log₂ Var against N."""
    if len(rows) < 2:
        raise ArgumentError("slope needs at least two register sizes")
    n = np.array([r.num_qubits for r in rows], dtype=float)
    v = np.log2([max(r.var_grad, 1e-300) for r in rows])
    return float(np.polyfit(n, v, 1)[0])
