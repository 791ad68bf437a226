"""kernel command: Gram matrix of a CSV dataset, with optional ridge fit and advantage check."""

from __future__ import annotations

import argparse
import logging
import math

import numpy as np

from qml.errors import ArgumentError
from qml.kernels import (
    ClassicalKernelKind,
    ClassicalKernelSpec,
    FeatureMapKind,
    FeatureMapSpec,
    geometric_difference,
    kernel_matrix,
    kernel_risk_bounds,
    model_complexity,
    ridge_fit,
)
from qml.kernels.kernels import KernelSpec
from workbench.commands.base import Subparsers, add_command, result
from workbench.config import ExperimentConfig
from workbench.datasets import Dataset, Schema, load_csv_dataset
from workbench.persistence import ResultRecord, Table

logger = logging.getLogger(__name__)

_ANGLE_MAPS = {FeatureMapKind.ANGLE_X, FeatureMapKind.ANGLE_Y}


def kernel_spec(name: str, sigma: float = 1.0, degree: int = 2) -> KernelSpec:
    if name in {k.value for k in ClassicalKernelKind}:
        return ClassicalKernelSpec(ClassicalKernelKind(name), degree=degree, sigma=sigma)
    return FeatureMapSpec.parse(name)


def pool_images(features: np.ndarray, side: int, pool: int) -> np.ndarray:
    """Average-pool side×side images into pool×pool blocks."""
    if pool < 1 or side % pool:
        raise ArgumentError(f"pool size {pool} must divide the image side {side}")
    block = side // pool
    images = features.reshape(-1, pool, block, pool, block)
    return images.mean(axis=(2, 4)).reshape(features.shape[0], pool * pool)


def prepare_features(data: Dataset, spec: KernelSpec, config: ExperimentConfig) -> np.ndarray:
    """Pool optdigits images for angle maps and scale angle features by π (configurable)."""
    feats = data.features
    angle = isinstance(spec, FeatureMapSpec) and spec.kind in _ANGLE_MAPS
    if data.schema is Schema.OPTDIGITS and (angle or "pool" in config.params):
        feats = pool_images(feats, 8, config.get_int("pool", 2))
    if angle:
        feats = feats * config.get_float("angle_scale", math.pi)
    return feats


def kernel(config: ExperimentConfig) -> ResultRecord:
    data = load_csv_dataset(config.get_path("data"), config.get_str("schema", "optdigits"))
    limit = config.get_int("limit", len(data))
    spec = kernel_spec(config.get_str("map", "angleX"), config.get_float("sigma", 1.0),
                       config.get_int("degree", 2))
    feats = prepare_features(data, spec, config)[:limit]
    labels = data.labels[:limit]
    km = kernel_matrix(feats, spec)
    k = km.entries
    metrics: dict[str, object] = {
        "size": km.size,
        "kernel": spec.label,
        "features": feats.shape[1],
        "symmetric": bool(np.allclose(k, k.T, atol=1e-12)),
        "min_eigenvalue": float(np.linalg.eigvalsh(k).min()),
    }
    if "lam" in config.params:
        target = config.get_float("target", float(labels[0]))
        y = np.where(labels == target, 1.0, -1.0)
        lam = config.get_float("lam", 0.1)
        model = ridge_fit(k, y, lam, spec.label)
        fitted = np.sign(k @ model.dual)
        bounds = kernel_risk_bounds(k, y, lam)
        metrics.update(train_accuracy=float(np.mean(fitted == y)), train_bound=bounds.train_bound,
                       gen_bound=bounds.gen_bound, model_complexity=model_complexity(k, y).value)
        if isinstance(spec, FeatureMapSpec):
            classical = kernel_matrix(feats, ClassicalKernelSpec(ClassicalKernelKind.GAUSSIAN,
                                                                 sigma=config.get_float("sigma", 1.0)))
            metrics["geometric_difference"] = geometric_difference(classical.entries, k).value
    logger.info("Kernel %s: %dx%d, min eigenvalue %.3g", spec.label, km.size, km.size,
                metrics["min_eigenvalue"])
    return result(config, metrics, tables={"kernel": Table.from_matrix(k, prefix="k")})


def register(subparsers: Subparsers, parents: list[argparse.ArgumentParser]) -> None:
    p = add_command(subparsers, "kernel", kernel, "kernel matrix of a CSV dataset", parents)
    p.add_argument("--data", default=None, help="CSV dataset path")
    p.add_argument("--schema", default=None, choices=[s.value for s in Schema])
    p.add_argument("--map", default=None,
                   help="feature map (basis, amplitude, angleX, angleY) or classical kernel "
                        "(polynomial, gaussian, sigmoid)")
    p.add_argument("--limit", type=int, default=None, help="use the first N rows")
    p.add_argument("--pool", type=int, default=None, help="pool 8x8 images to PxP blocks")
    p.add_argument("--angle-scale", type=float, default=None, help="angle feature scale (π)")
    p.add_argument("--sigma", type=float, default=None, help="gaussian kernel width")
    p.add_argument("--degree", type=int, default=None, help="polynomial kernel degree")
    p.add_argument("--lam", type=float, default=None, help="fit dual ridge regression")
    p.add_argument("--target", type=float, default=None, help="label mapped to +1")
