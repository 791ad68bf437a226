"""qnn-train, qgan-train and bp-experiment commands."""

from __future__ import annotations

import argparse
import logging
import math

import numpy as np

from qml.errors import ArgumentError
from qml.learners import (
    DepthPolicy,
    QGANConfig,
    QNNConfig,
    bp_variance_experiment,
    qgan_patch_train,
    qnn_accuracy,
    qnn_train_classifier,
    synth_margin_dataset,
    two_design_variance,
    variance_slope,
)
from qml.learners.perceptron import MarginDataset
from qml.learners.records import TrainRecord
from qml.rng import derive_stream
from workbench.commands.base import Subparsers, add_command, result
from workbench.config import ExperimentConfig
from workbench.datasets import load_csv_dataset
from workbench.persistence import ResultRecord, Table

logger = logging.getLogger(__name__)


def margin_angles(features: np.ndarray) -> np.ndarray:
    """Map unit-norm features in [−1, 1] to angles in [0, π]."""
    return (np.clip(features, -1.0, 1.0) + 1.0) * (math.pi / 2)


def qnn_split(n: int, d: int, gamma: float, seed: int) -> tuple[MarginDataset, MarginDataset]:
    train = synth_margin_dataset(n, d, gamma, derive_stream(seed, "qnn-data", "train"))
    # same separator for the held-out set
    rng = derive_stream(seed, "qnn-data", "test")
    test_feats, test_labels = [], []
    while len(test_labels) < max(n // 2, 1):
        x = rng.standard_normal(d)
        x /= np.linalg.norm(x)
        m = float(x @ train.separator)
        if abs(m) >= gamma:
            test_feats.append(x)
            test_labels.append(1.0 if m > 0 else -1.0)
    test = MarginDataset(np.asarray(test_feats), np.asarray(test_labels), train.separator, gamma)
    return train, test


def _history(record: TrainRecord) -> Table:
    rows = [{"epoch": e.epoch, "train_loss": e.train_loss, "test_loss": e.test_loss,
             "accuracy": e.accuracy, "test_accuracy": e.test_accuracy, **e.extra}
            for e in record.epochs]
    return Table.from_dicts(rows)


def qnn_train(config: ExperimentConfig) -> ResultRecord:
    n_qubits = config.get_int("qubits", 4)
    train, test = qnn_split(config.get_int("samples", 40), n_qubits,
                            config.get_float("gamma", 0.3), config.seed)
    qcfg = QNNConfig(
        encoding=config.get_str("encoding", "angleY"),
        num_qubits=n_qubits,
        layers=config.get_int("layers", 2),
        lr=config.get_float("lr", 0.1),
        batch=config.get_int("batch", 8),
        epochs=config.get_int("epochs", 50),
        optimizer=config.get_str("optimizer", "adam"),
        seed=config.seed,
    )
    x_train, x_test = margin_angles(train.features), margin_angles(test.features)
    model, record = qnn_train_classifier(x_train, train.labels, qcfg, x_test, test.labels)
    losses = record.losses
    metrics = {
        "initial_loss": losses[0] if losses else None,
        "final_loss": losses[-1] if losses else None,
        "train_accuracy": qnn_accuracy(model, x_train, train.labels),
        "test_accuracy": qnn_accuracy(model, x_test, test.labels),
        "num_params": model.circuit.num_params,
    }
    return result(config, metrics, {"theta": model.theta}, {"history": _history(record)})


def qgan_train(config: ExperimentConfig) -> ResultRecord:
    data = load_csv_dataset(config.get_path("data"), "optdigits")
    digit = config.get_int("digit", 5)
    images = data.where_label(digit).features[: config.get_int("samples", 50)]
    if len(images) == 0:
        raise ArgumentError(f"no images with label {digit} in {data.source}")
    qcfg = QGANConfig(
        patches=config.get_int("patches", 4),
        num_qubits=config.get_int("qubits", 5),
        ancillas=config.get_int("ancillas", 1),
        layers=config.get_int("layers", 6),
        lr_g=config.get_float("lr_g", 0.3),
        lr_d=config.get_float("lr_d", 0.01),
        epochs=config.get_int("epochs", 2),
        batch=config.get_int("batch", 4),
        seed=config.seed,
    )
    res = qgan_patch_train(images, qcfg)
    final = res.record.final
    metrics = {
        "images": len(images),
        "epochs": len(res.record.epochs),
        "generator_loss": final.train_loss if final else None,
        "discriminator_loss": final.extra.get("discriminator_loss") if final else None,
        "losses_finite": bool(all(math.isfinite(v) for v in res.record.losses)),
    }
    return result(config, metrics, {"generator": res.generator}, {"history": _history(res.record)})


def bp_experiment(config: ExperimentConfig) -> ResultRecord:
    qubits = config.get_ints("qubits", [2, 3, 4, 5, 6])
    policy = DepthPolicy(config.get_str("policy", "two_design"))
    rows = bp_variance_experiment(qubits, config.get_int("samples", 10_000), policy, config.seed)
    table = Table.from_dicts([
        {"num_qubits": r.num_qubits, "layers": r.layers, "samples": r.samples,
         "mean_grad": r.mean_grad, "var_grad": r.var_grad, "predicted_var": r.predicted_var,
         "two_design_var": two_design_variance(r.num_qubits), "ratio": r.ratio,
         "mean_sigmas": r.mean_sigmas}
        for r in rows
    ])
    metrics = {
        "policy": policy,
        "variance_slope": variance_slope(rows) if len(rows) > 1 else None,
        "max_ratio": max(r.ratio for r in rows),
        "min_ratio": min(r.ratio for r in rows),
    }
    return result(config, metrics, tables={"variance": table})


def register(subparsers: Subparsers, parents: list[argparse.ArgumentParser]) -> None:
    p = add_command(subparsers, "qnn-train", qnn_train,
                    "train a QNN classifier on a seeded margin dataset", parents)
    p.add_argument("--qubits", type=int, default=None)
    p.add_argument("--layers", type=int, default=None)
    p.add_argument("--epochs", type=int, default=None)
    p.add_argument("--batch", type=int, default=None)
    p.add_argument("--lr", type=float, default=None)
    p.add_argument("--optimizer", default=None, choices=["sgd", "adam"])
    p.add_argument("--encoding", default=None, help="angleX or angleY")
    p.add_argument("--samples", type=int, default=None, help="training points")
    p.add_argument("--gamma", type=float, default=None, help="dataset margin")

    p = add_command(subparsers, "qgan-train", qgan_train,
                    "train the patch QGAN on optdigits-format images", parents)
    p.add_argument("--data", default=None, help="optdigits CSV")
    p.add_argument("--digit", type=int, default=None, help="label to learn (default: 5)")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--patches", type=int, default=None)
    p.add_argument("--qubits", type=int, default=None)
    p.add_argument("--ancillas", type=int, default=None)
    p.add_argument("--layers", type=int, default=None)
    p.add_argument("--epochs", type=int, default=None)
    p.add_argument("--batch", type=int, default=None)
    p.add_argument("--lr-g", type=float, default=None)
    p.add_argument("--lr-d", type=float, default=None)

    p = add_command(subparsers, "bp-experiment", bp_experiment,
                    "gradient variance against register size", parents)
    p.add_argument("--qubits", default=None, help="comma-separated register sizes")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--policy", default=None, choices=[d.value for d in DepthPolicy])
