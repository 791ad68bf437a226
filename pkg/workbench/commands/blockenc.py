"""blockenc command: LCU encoding of a Pauli-sum matrix, with optional pseudo-inverse."""

from __future__ import annotations

import argparse
import json
import logging

import numpy as np

from qml.blockenc import be_from_pauli_terms, be_pseudo_inverse, count_queries
from qml.errors import ArgumentError, ParseError
from qml.sim.paulis import pauli_matrix
from workbench.commands.base import Subparsers, add_command, result
from workbench.config import ExperimentConfig
from workbench.persistence import ResultRecord, encode_matrix

logger = logging.getLogger(__name__)

DEMO_TERMS = "0.36:IZ,0.64:XX"


def parse_terms(spec: str) -> list[tuple[float, str]]:
    """``coef:PAULI`` pairs separated by commas, e.g. ``0.36:IZ,0.64:XX``."""
    terms = []
    for chunk in spec.split(","):
        coef, sep, pauli = chunk.strip().partition(":")
        if not sep:
            raise ArgumentError(f"term {chunk!r} is not coef:PAULI")
        try:
            terms.append((float(coef), pauli.strip().upper()))
        except ValueError as exc:
            raise ArgumentError(f"bad coefficient in {chunk!r}") from exc
    return terms


def _terms_from_file(config: ExperimentConfig) -> list[tuple[float, str]]:
    path = config.get_path("matrix")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(path, exc.lineno, exc.msg) from exc
    return [(float(c), str(p)) for c, p in raw["terms"]]


def blockenc(config: ExperimentConfig) -> ResultRecord:
    terms = (_terms_from_file(config) if "matrix" in config.params
             else parse_terms(config.get_str("terms", DEMO_TERMS)))
    dense = sum(c * pauli_matrix(p) for c, p in terms)
    be = be_from_pauli_terms(terms, label="A")
    extracted = be.extract()
    metrics: dict[str, object] = {
        "alpha": be.alpha,
        "ancillas": be.anc,
        "extract_error": float(np.max(np.abs(extracted - dense))),
        "queries": count_queries(be),
    }
    artifacts: dict[str, object] = {"extract": encode_matrix(extracted)}
    if "delta" in config.params:
        inv = be_pseudo_inverse(be, config.get_float("delta", 0.25),
                                config.get_float("epsilon", 1e-6))
        metrics["pinv_alpha"] = inv.alpha
        metrics["pinv_queries"] = inv.provenance.uses[0]
        artifacts["pseudo_inverse"] = encode_matrix(inv.extract())
    logger.info("LCU encoding: alpha=%.6g, %d ancillas", be.alpha, be.anc)
    return result(config, metrics, artifacts)


def register(subparsers: Subparsers, parents: list[argparse.ArgumentParser]) -> None:
    p = add_command(subparsers, "blockenc", blockenc,
                    "block-encode a Pauli-sum matrix by LCU", parents)
    p.add_argument("--terms", default=None, help=f"coef:PAULI list (default: {DEMO_TERMS})")
    p.add_argument("--matrix", default=None, help='JSON file {"terms": [[coef, "PAULI"], ...]}')
    p.add_argument("--delta", type=float, default=None, help="also build the pseudo-inverse")
    p.add_argument("--epsilon", type=float, default=None, help="pseudo-inverse precision")
