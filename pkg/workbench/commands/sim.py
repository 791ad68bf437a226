"""simulate, measure and tomography commands."""

from __future__ import annotations

import argparse
import logging

from qml.readout import (
    TomographyMethod,
    qst_linear_inversion,
    qst_mle,
    read_records,
    sample_bitstrings,
    simulate_pauli_settings,
    write_records,
)
from qml.rng import derive_stream
from qml.sim import DensityMatrix, apply_channel, depolarizing_channel, purity
from qml.sim.circuit import named_state
from qml.sim.states import State
from workbench.commands.base import Subparsers, add_command, result
from workbench.config import ExperimentConfig
from workbench.persistence import ResultRecord, encode_matrix

logger = logging.getLogger(__name__)


def _prepared(config: ExperimentConfig) -> State:
    state: State = named_state(config.get_str("state", "ghz"), config.get_int("qubits", 2))
    noise = config.get_float("noise", 0.0)
    if noise > 0:
        state = apply_channel(state, depolarizing_channel(noise, state.num_qubits))
    return state


def _matrix(state: State) -> DensityMatrix:
    return state if isinstance(state, DensityMatrix) else state.density()


def simulate(config: ExperimentConfig) -> ResultRecord:
    state = _prepared(config)
    rho = _matrix(state)
    metrics: dict[str, object] = {
        "num_qubits": rho.num_qubits,
        "purity": purity(rho),
        "probabilities": rho.matrix.diagonal().real,
    }
    shots = config.get_int("shots", 0)
    if shots > 0:
        metrics["counts"] = sample_bitstrings(state, shots, derive_stream(config.seed, "simulate"))
    artifacts = {"density_matrix": encode_matrix(rho.matrix)}
    if not isinstance(state, DensityMatrix):
        artifacts["state"] = encode_matrix(state.amplitudes)
    return result(config, metrics, artifacts)


def measure(config: ExperimentConfig) -> ResultRecord:
    state = _prepared(config)
    shots = config.get_int("shots", 1000)
    records = simulate_pauli_settings(state, shots, derive_stream(config.seed, "measure"))
    path = config.get_path("records")
    written = write_records(path, records)
    logger.info("Wrote %d measurement records to %s", written, path)
    return result(config, {"settings": written, "shots_per_setting": shots},
                  {"records": str(path), "truth": encode_matrix(_matrix(state).matrix)})


def tomography(config: ExperimentConfig) -> ResultRecord:
    records = read_records(config.get_path("records"))
    method = TomographyMethod(config.get_str("method", "linear_inversion"))
    truth = _prepared(config) if "state" in config.params else None
    match method:
        case TomographyMethod.LINEAR_INVERSION:
            est = qst_linear_inversion(records, truth)
        case TomographyMethod.MLE:
            est = qst_mle(records, truth)
    metrics: dict[str, object] = {
        "method": est.method,
        "settings_used": est.settings_used,
        "shots_per_setting": est.shots_per_setting,
        "min_eigenvalue": est.min_eigenvalue,
        "psd_violation": est.psd_violation,
        "converged": est.converged,
        "iterations": est.iterations,
    }
    if est.fidelity_to_truth is not None:
        metrics["fidelity_to_truth"] = est.fidelity_to_truth
    return result(config, metrics, {"rho_hat": encode_matrix(est.rho_hat.matrix)})


def _state_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--state", default=None, help="named state: ghz, bell, plus, zero")
    parser.add_argument("--qubits", type=int, default=None, help="register size (default: 2)")
    parser.add_argument("--noise", type=float, default=None,
                        help="global depolarizing probability applied after preparation")


def register(subparsers: Subparsers, parents: list[argparse.ArgumentParser]) -> None:
    p = add_command(subparsers, "simulate", simulate, "prepare a named state", parents)
    _state_flags(p)
    p.add_argument("--shots", type=int, default=None, help="also sample computational counts")

    p = add_command(subparsers, "measure", measure,
                    "write local Pauli measurement records as JSON lines", parents)
    _state_flags(p)
    p.add_argument("--shots", type=int, default=None, help="shots per setting (0 = exact)")
    p.add_argument("--records", default=None, help="JSONL output path")

    p = add_command(subparsers, "tomography", tomography,
                    "reconstruct a state from measurement records", parents)
    _state_flags(p)
    p.add_argument("--records", default=None, help="JSONL input path")
    p.add_argument("--method", default=None, choices=[m.value for m in TomographyMethod])
