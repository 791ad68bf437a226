"""
Library configuration.

Responsibilities:
- Define the simulator limits used throughout the library
- Load overrides from environment variables (QML_*)
- Hold the active config per task so batch drivers can scope overrides
"""

from __future__ import annotations

import logging
import os
from collections.abc import Iterator
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field

from qml.constants import (
    DEFAULT_COMPOSE_QUBIT_LIMIT,
    DEFAULT_MAX_QUBITS,
    MLE_MAX_ITERATIONS,
)
from qml.errors import CapacityError

logger = logging.getLogger(__name__)


def env_int(name: str, default: int) -> int:
    """Read an integer from an environment variable, falling back to *default*."""
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning("Invalid integer for %s=%r, using default %d", name, raw, default)
        return default


@dataclass(frozen=True, slots=True)
class SimConfig:
    """Immutable simulator configuration.

    Precedence:
      1. Explicit constructor arguments
      2. Environment variables (QML_*)
      3. Library defaults in qml.constants
    """

    max_qubits: int = field(
        default_factory=lambda: env_int("QML_MAX_QUBITS", DEFAULT_MAX_QUBITS)
    )
    compose_qubit_limit: int = field(
        default_factory=lambda: env_int("QML_COMPOSE_QUBIT_LIMIT", DEFAULT_COMPOSE_QUBIT_LIMIT)
    )
    mle_max_iterations: int = field(
        default_factory=lambda: env_int("QML_MLE_MAX_ITER", MLE_MAX_ITERATIONS)
    )

    def check_qubits(self, num_qubits: int) -> None:
        """Raise CapacityError when *num_qubits* exceeds the cap."""
        if num_qubits > self.max_qubits:
            raise CapacityError(num_qubits, self.max_qubits)

    def summary(self) -> str:
        """Human-readable summary for startup logging."""
        return (
            f"max_qubits={self.max_qubits}  "
            f"compose_limit={self.compose_qubit_limit}  "
            f"mle_max_iter={self.mle_max_iterations}"
        )


_ACTIVE: ContextVar[SimConfig | None] = ContextVar("qml_sim_config", default=None)


def active_config() -> SimConfig:
    """Return the config installed for the current context (env/defaults otherwise)."""
    config = _ACTIVE.get()
    if config is None:
        config = SimConfig()
        _ACTIVE.set(config)
    return config


@contextmanager
def use_config(config: SimConfig) -> Iterator[SimConfig]:
    """Install *config* for the duration of the block."""
    token = _ACTIVE.set(config)
    try:
        yield config
    finally:
        _ACTIVE.reset(token)
