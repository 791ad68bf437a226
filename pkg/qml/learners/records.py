"""Training history records shared by every trainable model."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np
from numpy.typing import ArrayLike

from qml.errors import ValidationError


def param_hash(params: ArrayLike) -> str:
    """Short content hash of a parameter snapshot."""
    raw = np.ascontiguousarray(np.asarray(params, dtype=np.float64)).tobytes()
    return hashlib.blake2b(raw, digest_size=8).hexdigest()


@dataclass(frozen=True, slots=True)
class EpochRecord:
    epoch: int
    train_loss: float
    test_loss: float | None = None
    accuracy: float | None = None
    test_accuracy: float | None = None
    param_hash: str = ""
    wall_seconds: float = 0.0
    extra: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True, slots=True)
class TrainRecord:
    """Per-epoch history of one training run.

    Epoch numbers are strictly increasing; the master seed is always recorded.
    """

    seed: int
    model: str
    epochs: tuple[EpochRecord, ...] = ()

    def __post_init__(self) -> None:
        numbers = [e.epoch for e in self.epochs]
        if any(b <= a for a, b in zip(numbers, numbers[1:], strict=False)):
            raise ValidationError(f"epochs are not strictly increasing: {numbers}")

    def with_epoch(self, record: EpochRecord) -> TrainRecord:
        return TrainRecord(self.seed, self.model, (*self.epochs, record))

    @property
    def losses(self) -> list[float]:
        return [e.train_loss for e in self.epochs]

    @property
    def final(self) -> EpochRecord | None:
        return self.epochs[-1] if self.epochs else None

    def to_jsonl(self) -> str:
        """One JSON object per epoch, each tagged with model and seed."""
        lines = []
        for e in self.epochs:
            row: dict[str, Any] = {"model": self.model, "seed": self.seed, **asdict(e)}
            lines.append(json.dumps(row, sort_keys=True))
        return "\n".join(lines) + ("\n" if lines else "")
