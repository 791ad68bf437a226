"""
Experiment configuration.

Responsibilities:
- Define the common run settings (seed, output, mode, logging, register limits)
- Load key=value parameter files and merge them under explicit flags
- Provide a single immutable ExperimentConfig handed to every command
"""

from __future__ import annotations

import logging
import os
from collections.abc import Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from qml.config import SimConfig, env_int
from qml.constants import DEFAULT_COMPOSE_QUBIT_LIMIT, DEFAULT_MAX_QUBITS
from qml.errors import ArgumentError, ParseError

logger = logging.getLogger(__name__)


def _env_out() -> Path | None:
    raw = os.environ.get("QMLWB_OUT_DIR")
    return Path(raw) if raw else None


def load_config_file(path: str | Path) -> dict[str, str]:
    """Parse ``key=value`` lines; ``#`` starts a comment, blank lines are skipped."""
    p = Path(path)
    params: dict[str, str] = {}
    with p.open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key = key.strip().replace("-", "_")
            if not sep or not key:
                raise ParseError(p, lineno, f"expected key=value, got {raw.strip()!r}")
            params[key] = value.strip()
    logger.debug("Loaded %d parameters from %s", len(params), p)
    return params


@dataclass(frozen=True, slots=True)
class ExperimentConfig:
    """Immutable run configuration.

    Precedence for every value:
      1. Explicit command-line flags
      2. The ``--config`` key=value file
      3. Environment variables (QMLWB_*, QML_*)
      4. Library defaults
    """

    subcommand: str
    seed: int = field(default_factory=lambda: env_int("QMLWB_SEED", 0))
    out: Path | None = None
    out_dir: Path | None = field(default_factory=_env_out)
    mode: str | None = None
    log_level: str = field(
        default_factory=lambda: os.environ.get("QMLWB_LOG_LEVEL", "INFO").upper()
    )
    max_qubits: int = field(
        default_factory=lambda: env_int("QML_MAX_QUBITS", DEFAULT_MAX_QUBITS)
    )
    compose_qubit_limit: int = field(
        default_factory=lambda: env_int("QML_COMPOSE_QUBIT_LIMIT", DEFAULT_COMPOSE_QUBIT_LIMIT)
    )
    params: Mapping[str, Any] = field(default_factory=dict)

    # Parameter access ----------------------------------------------------------

    def _raw(self, name: str, default: Any) -> Any:
        return self.params.get(name, default)

    def get_int(self, name: str, default: int) -> int:
        value = self._raw(name, default)
        try:
            return int(value)
        except (TypeError, ValueError) as exc:
            raise ArgumentError(f"parameter {name} must be an integer, got {value!r}") from exc

    def get_float(self, name: str, default: float) -> float:
        value = self._raw(name, default)
        try:
            return float(value)
        except (TypeError, ValueError) as exc:
            raise ArgumentError(f"parameter {name} must be a number, got {value!r}") from exc

    def get_str(self, name: str, default: str) -> str:
        return str(self._raw(name, default))

    def get_bool(self, name: str, default: bool = False) -> bool:
        value = self._raw(name, default)
        if isinstance(value, bool):
            return value
        return str(value).strip().lower() in {"1", "true", "yes", "on"}

    def get_ints(self, name: str, default: list[int]) -> list[int]:
        """Comma-separated integers (``2,3,4``) or an already-parsed list."""
        value = self._raw(name, default)
        if isinstance(value, list | tuple):
            return [int(v) for v in value]
        try:
            return [int(v) for v in str(value).split(",") if v.strip()]
        except ValueError as exc:
            raise ArgumentError(f"parameter {name} must be a list of integers") from exc

    def get_path(self, name: str) -> Path:
        value = self.params.get(name)
        if value is None:
            raise ArgumentError(f"--{name.replace('_', '-')} is required for {self.subcommand}")
        return Path(value)

    # Derived -------------------------------------------------------------------

    def sim_config(self) -> SimConfig:
        return SimConfig(max_qubits=self.max_qubits, compose_qubit_limit=self.compose_qubit_limit)

    def to_dict(self) -> dict[str, Any]:
        """Echo stored in every result record."""
        return {
            "subcommand": self.subcommand,
            "seed": self.seed,
            "out": str(self.out) if self.out is not None else None,
            "mode": self.mode,
            "max_qubits": self.max_qubits,
            "compose_qubit_limit": self.compose_qubit_limit,
            "params": {k: (str(v) if isinstance(v, Path) else v)
                       for k, v in sorted(self.params.items())},
        }

    def summary(self) -> str:
        """Human-readable summary for startup logging."""
        return (
            f"{self.subcommand}  seed={self.seed}  mode={self.mode}  "
            f"max_qubits={self.max_qubits}  compose_limit={self.compose_qubit_limit}  "
            f"params={len(self.params)}"
        )
