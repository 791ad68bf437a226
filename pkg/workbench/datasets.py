"""
CSV dataset ingestion.

Two schemas: ``optdigits`` (64 integer pixels 0–16 scaled by 1/16, integer
label last) and ``generic`` (float features, final label column, optional
header row).  Blank lines and ``#`` comment lines are skipped; errors carry
the 1-based line number.
"""

from __future__ import annotations

import csv
import enum
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from qml.errors import ArgumentError, ParseError

logger = logging.getLogger(__name__)

OPTDIGITS_PIXELS = 64
OPTDIGITS_MAX = 16


class Schema(enum.Enum):
    OPTDIGITS = "optdigits"
    GENERIC = "generic"


@dataclass(frozen=True, slots=True, eq=False)
class Dataset:
    features: np.ndarray
    labels: np.ndarray
    schema: Schema
    source: str = ""

    def __len__(self) -> int:
        return self.features.shape[0]

    def where_label(self, label: float) -> Dataset:
        keep = self.labels == label
        return Dataset(self.features[keep], self.labels[keep], self.schema, self.source)

    def images(self, side: int = 8) -> np.ndarray:
        return self.features.reshape(-1, side, side)


def _optdigits_row(path: Path, lineno: int, cells: list[str]) -> tuple[list[float], int]:
    if len(cells) != OPTDIGITS_PIXELS + 1:
        raise ParseError(path, lineno, f"expected {OPTDIGITS_PIXELS + 1} columns, got {len(cells)}")
    try:
        values = [int(c) for c in cells]
    except ValueError as exc:
        raise ParseError(path, lineno, "optdigits cells must be integers") from exc
    pixels = values[:-1]
    bad = [v for v in pixels if not 0 <= v <= OPTDIGITS_MAX]
    if bad:
        raise ParseError(path, lineno, f"pixel value {bad[0]} outside 0..{OPTDIGITS_MAX}")
    return [v / OPTDIGITS_MAX for v in pixels], values[-1]


def _generic_row(path: Path, lineno: int, cells: list[str]) -> list[float]:
    try:
        return [float(c) for c in cells]
    except ValueError as exc:
        raise ParseError(path, lineno, f"non-numeric cell in {cells!r}") from exc


def load_csv_dataset(path: str | Path, schema: Schema | str = Schema.GENERIC) -> Dataset:
    p = Path(path)
    try:
        kind = Schema(schema)
    except ValueError as exc:
        raise ArgumentError(f"unknown dataset schema {schema!r}") from exc
    features: list[list[float]] = []
    labels: list[float] = []
    width: int | None = None
    with p.open(newline="", encoding="utf-8") as fh:
        for lineno, cells in enumerate(csv.reader(fh), start=1):
            cells = [c.strip() for c in cells]
            if not cells or not any(cells) or cells[0].startswith("#"):
                continue
            if kind is Schema.OPTDIGITS:
                row, label = _optdigits_row(p, lineno, cells)
                features.append(row)
                labels.append(label)
                continue
            if width is None and not features:
                try:
                    float(cells[0])
                except ValueError:
                    logger.debug("%s: treating line %d as a header", p, lineno)
                    width = len(cells)
                    continue
            if width is None:
                width = len(cells)
            if len(cells) != width:
                raise ParseError(p, lineno, f"ragged row: {len(cells)} columns, expected {width}")
            if width < 2:
                raise ParseError(p, lineno, "need at least one feature and a label column")
            values = _generic_row(p, lineno, cells)
            features.append(values[:-1])
            labels.append(values[-1])
    if not features:
        raise ArgumentError(f"{p} contains no data rows")
    logger.info("Loaded %d rows from %s (%s)", len(features), p, kind.value)
    return Dataset(np.asarray(features), np.asarray(labels), kind, str(p))
