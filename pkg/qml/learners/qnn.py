"""
Quantum neural network classifier.

Responsibilities:
- qnn_forward: f(θ) = Tr[O V(θ) ρ V(θ)†]
- parameter_shift_grad: ∂f/∂θ_j = ½[f(θ + π/2·e_j) − f(θ − π/2·e_j)]
- qnn_train_classifier / qnn_predict on ±1 labels with sign read-out
"""

from __future__ import annotations

import logging
import math
import time
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from qml.errors import ArgumentError
from qml.kernels.feature_maps import FeatureMapSpec
from qml.learners.circuits import ParamCircuit, build_hec
from qml.learners.optim import make_optimizer
from qml.learners.records import EpochRecord, TrainRecord, param_hash
from qml.linalg import ComplexArray, as_complex
from qml.rng import derive_stream
from qml.sim.measure import Observable, expectation
from qml.sim.paulis import pauli_matrix
from qml.sim.states import DensityMatrix, State, StateVector, tensor

logger = logging.getLogger(__name__)


def _observable_matrix(obs: Observable | ArrayLike, dim: int) -> ComplexArray:
    o = obs.matrix if isinstance(obs, Observable) else as_complex(obs)
    if o.shape != (dim, dim):
        raise ArgumentError(f"observable has shape {o.shape}, circuit dimension is {dim}")
    return o


def readout_observable(num_qubits: int, wire: int = 0) -> Observable:
    """Z on *wire*, identity elsewhere."""
    label = "".join("Z" if q == wire else "I" for q in range(num_qubits))
    return Observable(pauli_matrix(label), ((1.0, label),))


def qnn_forward(
    circuit: ParamCircuit, theta: ArrayLike, rho_in: State, obs: Observable | ArrayLike,
) -> float:
    o = _observable_matrix(obs, circuit.dim)
    return expectation(circuit.apply(theta, rho_in), o)


def _state_columns(states: Sequence[State]) -> tuple[np.ndarray, bool]:
    if all(isinstance(s, StateVector) for s in states):
        return np.stack([s.amplitudes for s in states], axis=1), True  # type: ignore[union-attr]
    return np.stack([s.matrix if isinstance(s, DensityMatrix) else s.density().matrix
                     for s in states]), False


def _shift_jacobian(
    circuit: ParamCircuit, theta: ArrayLike, states: Sequence[State], o: ComplexArray,
) -> np.ndarray:
    """(batch, P) matrix of ∂f/∂θ_j for every input state."""
    circuit.check_shift_rule()
    shifted = circuit.shifted_unitaries(theta)
    data, pure = _state_columns(states)
    jac = np.empty((len(states), circuit.num_params))
    for j in range(circuit.num_params):
        values = []
        for u in shifted[j]:
            if pure:
                v = u @ data
                values.append(np.real(np.sum(v.conj() * (o @ v), axis=0)))
            else:
                evolved = u @ data @ u.conj().T
                values.append(np.real(np.einsum("bij,ji->b", evolved, o)))
        jac[:, j] = 0.5 * (values[0] - values[1])
    return jac


def parameter_shift_grad(
    circuit: ParamCircuit, theta: ArrayLike, rho_in: State, obs: Observable | ArrayLike,
) -> np.ndarray:
    o = _observable_matrix(obs, circuit.dim)
    return _shift_jacobian(circuit, theta, [rho_in], o)[0]


# ---------------------------------------------------------------------------
# Classifier
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class QNNConfig:
    encoding: str = "angleY"
    num_qubits: int = 4
    layers: int = 2
    lr: float = 0.1
    batch: int = 8
    epochs: int = 50
    optimizer: str = "adam"
    seed: int = 0
    entangler: str = "CZ"


def encode_input(spec: FeatureMapSpec, x: ArrayLike, num_qubits: int) -> StateVector:
    """Encode *x* and pad with |0⟩ wires up to *num_qubits*."""
    state = spec.encode(x)
    if state.num_qubits > num_qubits:
        raise ArgumentError(f"{spec.label} encoding needs {state.num_qubits} qubits, "
                            f"the classifier has {num_qubits}")
    if state.num_qubits < num_qubits:
        padded = tensor(state, StateVector.zero(num_qubits - state.num_qubits))
        assert isinstance(padded, StateVector)
        state = padded
    return state


def _check_labels(y: ArrayLike, n: int) -> np.ndarray:
    labels = np.asarray(y, dtype=float).reshape(-1)
    if labels.size != n:
        raise ArgumentError(f"{labels.size} labels for {n} samples")
    if not np.all(np.isin(labels, (-1.0, 1.0))):
        raise ArgumentError("classifier labels must be ±1")
    return labels


def _outputs(circuit: ParamCircuit, theta: np.ndarray, states: Sequence[StateVector],
             o: ComplexArray) -> np.ndarray:
    u = circuit.unitary(theta)
    v = u @ np.stack([s.amplitudes for s in states], axis=1)
    return np.real(np.sum(v.conj() * (o @ v), axis=0))


def _loss(y_hat: np.ndarray, y: np.ndarray) -> float:
    return float(0.5 * np.sum((y_hat - y) ** 2))


def _accuracy(y_hat: np.ndarray, y: np.ndarray) -> float:
    return float(np.mean(np.where(y_hat >= 0, 1.0, -1.0) == y)) if y.size else math.nan


@dataclass(frozen=True, slots=True, eq=False)
class QNNModel:
    circuit: ParamCircuit
    theta: np.ndarray
    encoder: FeatureMapSpec
    observable: Observable


def qnn_predict(model: QNNModel, x: ArrayLike) -> int:
    """Sign of the readout expectation (0 maps to +1)."""
    state = encode_input(model.encoder, x, model.circuit.num_qubits)
    return 1 if qnn_forward(model.circuit, model.theta, state, model.observable) >= 0 else -1


def qnn_accuracy(model: QNNModel, x: ArrayLike, y: ArrayLike) -> float:
    feats = np.atleast_2d(np.asarray(x, dtype=float))
    labels = _check_labels(y, feats.shape[0])
    preds = np.array([qnn_predict(model, row) for row in feats])
    return float(np.mean(preds == labels))


def qnn_train_classifier(
    x: ArrayLike,
    y: ArrayLike,
    config: QNNConfig,
    x_test: ArrayLike | None = None,
    y_test: ArrayLike | None = None,
) -> tuple[QNNModel, TrainRecord]:
    """Minimize ½Σ(ŷ − y)² over an HEC ansatz with parameter-shift gradients.

    Every random draw comes from streams derived from ``config.seed``, so a
    fixed seed reproduces the losses bit for bit.
    """
    feats = np.atleast_2d(np.asarray(x, dtype=float))
    labels = _check_labels(y, feats.shape[0])
    encoder = FeatureMapSpec.parse(config.encoding)
    circuit = build_hec(config.num_qubits, config.layers, config.entangler)
    obs = readout_observable(config.num_qubits)
    o = obs.matrix
    states = [encode_input(encoder, row, config.num_qubits) for row in feats]
    test_states: list[StateVector] = []
    test_labels = np.empty(0)
    if x_test is not None and y_test is not None:
        tf = np.atleast_2d(np.asarray(x_test, dtype=float))
        test_labels = _check_labels(y_test, tf.shape[0])
        test_states = [encode_input(encoder, row, config.num_qubits) for row in tf]

    theta = derive_stream(config.seed, "qnn", "init").uniform(0, 2 * math.pi, circuit.num_params)
    optimizer = make_optimizer(config.optimizer, config.lr)
    order_rng = derive_stream(config.seed, "qnn", "shuffle")
    record = TrainRecord(config.seed, f"qnn/{circuit.name}")
    batch = max(1, min(config.batch, len(states)))
    logger.info("QNN: %d samples, %d qubits, %d layers, %d parameters",
                len(states), config.num_qubits, config.layers, circuit.num_params)

    for epoch in range(1, config.epochs + 1):
        started = time.perf_counter()
        order = order_rng.permutation(len(states))
        for start in range(0, len(order), batch):
            idx = order[start : start + batch]
            chunk = [states[i] for i in idx]
            y_hat = _outputs(circuit, theta, chunk, o)
            jac = _shift_jacobian(circuit, theta, chunk, o)
            theta = optimizer.step(theta, (y_hat - labels[idx]) @ jac)
        y_hat = _outputs(circuit, theta, states, o)
        test_loss = test_acc = None
        if test_states:
            t_hat = _outputs(circuit, theta, test_states, o)
            test_loss, test_acc = _loss(t_hat, test_labels), _accuracy(t_hat, test_labels)
        entry = EpochRecord(epoch, _loss(y_hat, labels), test_loss, _accuracy(y_hat, labels),
                            test_acc, param_hash(theta), time.perf_counter() - started)
        record = record.with_epoch(entry)
        logger.debug("epoch %d: loss %.6f, accuracy %.3f", epoch, entry.train_loss,
                     entry.accuracy or 0.0)
    return QNNModel(circuit, theta, encoder, obs), record
