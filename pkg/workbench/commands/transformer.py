"""transformer and norm-study commands."""

from __future__ import annotations

import argparse
import json
import logging
from pathlib import Path
from typing import Any

import numpy as np

from qml.errors import ArgumentError, ParseError
from qml.transformer import (
    Mode,
    RowSampler,
    WeightSet,
    attention_weights,
    build_input_encodings,
    classical_attention,
    classical_transformer_row,
    cosine_similarity,
    norm_scaling_study,
    q_transformer_row,
)
from workbench.commands.base import Subparsers, add_command, result
from workbench.config import ExperimentConfig
from workbench.persistence import ResultRecord, Table

logger = logging.getLogger(__name__)


def load_instance(path: Path) -> dict[str, Any]:
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(path, exc.lineno, exc.msg) from exc
    missing = [k for k in ("S", "W_q", "W_k", "W_v", "M_1", "M_2") if k not in raw]
    if missing:
        raise ParseError(path, 1, f"instance is missing {', '.join(missing)}")
    return dict(raw)


def _parse_mode(raw: str) -> Mode:
    try:
        return Mode(raw)
    except ValueError as exc:
        raise ArgumentError(f"unknown mode {raw!r}; expected exact or poly") from exc


def transformer(config: ExperimentConfig) -> ResultRecord:
    instance = load_instance(config.get_path("instance"))
    s = np.asarray(instance["S"], dtype=float)
    weights = WeightSet.from_dict(instance)
    j = config.get_int("j", int(instance.get("j", 1)))
    mode = _parse_mode(config.mode or str(instance.get("mode", "exact")))
    epsilon = config.get_float("epsilon", float(instance.get("epsilon", 1e-6)))
    masked = config.get_bool("masked", bool(instance.get("masked", False)))
    if not 1 <= j <= s.shape[0]:
        raise ArgumentError(f"token index {j} out of range 1..{s.shape[0]}")

    inputs = build_input_encodings(s, weights)
    run = q_transformer_row(inputs, j, mode, epsilon, masked)
    # the comparison contract: γ = 1, β = 0 and the encodings' own α₀
    reference = WeightSet(weights.w_q, weights.w_k, weights.w_v, weights.m1, weights.m2,
                          weights.b1, weights.b2)
    classical = classical_transformer_row(s, j, reference, inputs.alpha0, masked)
    metrics: dict[str, Any] = {
        "j": j,
        "mode": mode,
        "alpha0": inputs.alpha0,
        "classical_row": classical,
        "quantum_amplitudes": run.state.amplitudes,
        "cosine_similarity": cosine_similarity(run.state.amplitudes, classical),
        "resource_report": run.report.as_dict(),
    }
    artifacts: dict[str, Any] = {}
    if "alpha0" in instance:
        alpha0 = float(instance["alpha0"])
        artifacts["fixture_attention_weights"] = attention_weights(s, weights, alpha0, masked)
        artifacts["fixture_attention_output"] = classical_attention(s, weights, alpha0, masked)
    logger.info("Transformer row %d (%s): cosine similarity %.12f", j, mode.value,
                metrics["cosine_similarity"])
    return result(config, metrics, artifacts)


def norm_study(config: ExperimentConfig) -> ResultRecord:
    study = norm_scaling_study(
        config.get_str("sampler", "gaussian"),
        config.get_ints("ells", [32, 64, 128, 256, 512, 1024]),
        config.get_int("trials", 5),
        config.seed,
        config.get_int("width", 64),
    )
    metrics = {
        "sampler": study.sampler,
        "width": study.width,
        "spectral_slope": study.spectral_slope,
        "frobenius_slope": study.frobenius_slope,
        "flagged": [r.ell for r in study.rows if r.flagged],
    }
    return result(config, metrics, tables={"norms": Table.from_dicts(study.table())})


def register(subparsers: Subparsers, parents: list[argparse.ArgumentParser]) -> None:
    p = add_command(subparsers, "transformer", transformer,
                    "quantum vs classical Transformer row on a JSON instance", parents)
    p.add_argument("--instance", default=None, help="JSON instance file")
    p.add_argument("--j", type=int, default=None, help="1-based token index")
    p.add_argument("--epsilon", type=float, default=None, help="polynomial-mode precision")
    p.add_argument("--masked", action="store_const", const=True, default=None,
                   help="causal attention mask")

    p = add_command(subparsers, "norm-study", norm_study,
                    "spectral and Frobenius norms of embedding matrices", parents)
    p.add_argument("--sampler", default=None, choices=[s.value for s in RowSampler])
    p.add_argument("--ells", default=None, help="comma-separated sequence lengths")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--width", type=int, default=None, help="embedding width d")
