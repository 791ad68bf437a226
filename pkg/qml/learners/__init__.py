"""Trainable models: perceptron, MLP, quantum neural networks, patch QGAN and diagnostics."""

from qml.learners.barren import (
    BPRow,
    DepthPolicy,
    bp_variance_experiment,
    predicted_variance,
    two_design_variance,
    variance_slope,
)
from qml.learners.capacity import CapacityBounds, capacity_bound_diagnostics
from qml.learners.circuits import (
    GateKind,
    ParamCircuit,
    ParamOp,
    build_hec,
    build_qcnn,
    circuit_from_layout,
    hec_pairs,
)
from qml.learners.mlp import (
    MLP,
    Activation,
    Loss,
    init_mlp,
    mlp_backprop,
    mlp_forward,
    mlp_train_step,
    softmax,
)
from qml.learners.optim import SGD, Adam, make_optimizer
from qml.learners.perceptron import (
    MarginDataset,
    PerceptronResult,
    mistake_bound,
    perceptron_train,
    synth_margin_dataset,
)
from qml.learners.qgan import (
    QGANConfig,
    QGANResult,
    discriminator_loss,
    generate_images,
    patch_probabilities,
    qgan_patch_train,
)
from qml.learners.qnn import (
    QNNConfig,
    QNNModel,
    encode_input,
    parameter_shift_grad,
    qnn_accuracy,
    qnn_forward,
    qnn_predict,
    qnn_train_classifier,
    readout_observable,
)
from qml.learners.records import EpochRecord, TrainRecord, param_hash

__all__ = [
    "MLP",
    "SGD",
    "Activation",
    "Adam",
    "BPRow",
    "CapacityBounds",
    "DepthPolicy",
    "EpochRecord",
    "GateKind",
    "Loss",
    "MarginDataset",
    "ParamCircuit",
    "ParamOp",
    "PerceptronResult",
    "QGANConfig",
    "QGANResult",
    "QNNConfig",
    "QNNModel",
    "TrainRecord",
    "bp_variance_experiment",
    "build_hec",
    "build_qcnn",
    "capacity_bound_diagnostics",
    "circuit_from_layout",
    "discriminator_loss",
    "encode_input",
    "generate_images",
    "hec_pairs",
    "init_mlp",
    "make_optimizer",
    "mistake_bound",
    "mlp_backprop",
    "mlp_forward",
    "mlp_train_step",
    "param_hash",
    "parameter_shift_grad",
    "patch_probabilities",
    "perceptron_train",
    "predicted_variance",
    "qgan_patch_train",
    "qnn_accuracy",
    "qnn_forward",
    "qnn_predict",
    "qnn_train_classifier",
    "readout_observable",
    "softmax",
    "synth_margin_dataset",
    "two_design_variance",
    "variance_slope",
]
