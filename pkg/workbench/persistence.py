"""
Result persistence.

Responsibilities:
- ResultRecord: config echo, metrics, artifacts and a version stamp
- JSON encoding of numpy values (complex arrays as shape + [re, im] pairs)
- CSV tables with a header row, floats written repr-exact
- Routing of a record and its tables to stdout, a JSON path or a CSV path
"""

from __future__ import annotations

import csv
import enum
import json
import logging
import sys
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from qml import __version__ as qml_version
from qml.errors import ParseError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Table:
    header: tuple[str, ...]
    rows: tuple[tuple[Any, ...], ...]

    @classmethod
    def from_dicts(cls, rows: Sequence[Mapping[str, Any]]) -> Table:
        header = tuple(rows[0]) if rows else ()
        return cls(header, tuple(tuple(r[h] for h in header) for r in rows))

    @classmethod
    def from_matrix(cls, m: np.ndarray, prefix: str = "c") -> Table:
        header = tuple(f"{prefix}{i}" for i in range(m.shape[1]))
        return cls(header, tuple(tuple(float(v) for v in row) for row in m))


@dataclass(frozen=True, slots=True)
class ResultRecord:
    config: Mapping[str, Any]
    metrics: Mapping[str, Any] = field(default_factory=dict)
    artifacts: Mapping[str, Any] = field(default_factory=dict)
    tables: Mapping[str, Table] = field(default_factory=dict)
    version: str = qml_version

    def to_dict(self) -> dict[str, Any]:
        return {
            "version": self.version,
            "config": encode(self.config),
            "metrics": encode(self.metrics),
            "artifacts": encode(self.artifacts),
        }


# ---------------------------------------------------------------------------
# Encoding
# ---------------------------------------------------------------------------

def encode_matrix(m: np.ndarray) -> dict[str, Any]:
    """{"shape": [...], "data": [[re, im], ...]} in row-major order."""
    flat = np.asarray(m, dtype=np.complex128).reshape(-1)
    return {"shape": list(np.shape(m)), "data": [[float(z.real), float(z.imag)] for z in flat]}


def decode_matrix(obj: Mapping[str, Any]) -> np.ndarray:
    data = np.asarray(obj["data"], dtype=float)
    return (data[:, 0] + 1j * data[:, 1]).reshape(obj["shape"])


def encode(value: Any) -> Any:
    """JSON-ready form: complex arrays as matrices, real arrays as nested lists."""
    match value:
        case np.ndarray() if np.iscomplexobj(value):
            return encode_matrix(value)
        case np.ndarray():
            return value.tolist()
        case complex() | np.complexfloating():
            return [float(value.real), float(value.imag)]
        case np.integer() | np.bool_():
            return value.item()
        case np.floating():
            return float(value)
        case enum.Enum():
            return value.value
        case Path():
            return str(value)
        case Mapping():
            return {str(k): encode(v) for k, v in value.items()}
        case list() | tuple():
            return [encode(v) for v in value]
        case _:
            return value


def dumps(record: ResultRecord) -> str:
    return json.dumps(record.to_dict(), indent=2, sort_keys=True)


def _cell(v: Any) -> str:
    if isinstance(v, float | np.floating):
        return repr(float(v))
    return str(encode(v))


def write_csv_table(table: Table, path: str | Path) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with p.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(table.header)
        for row in table.rows:
            writer.writerow([_cell(v) for v in row])
    logger.debug("Wrote %d rows to %s", len(table.rows), p)
    return p


def persist_result(record: ResultRecord, path: str | Path) -> Path:
    """Pretty JSON (indent 2, sorted keys); IO errors propagate."""
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with p.open("w", encoding="utf-8") as fh:
        fh.write(dumps(record))
        fh.write("\n")
    logger.info("Result written to %s", p)
    return p


def load_result(path: str | Path) -> dict[str, Any]:
    p = Path(path)
    try:
        raw = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(p, exc.lineno, exc.msg) from exc
    if not isinstance(raw, dict) or "config" not in raw:
        raise ParseError(p, 1, "not a result record")
    return raw


def write_outputs(record: ResultRecord, out: Path | None, default_name: str,
                  out_dir: Path | None = None) -> Path | None:
    """Route a record: stdout, ``OUT.json`` plus ``OUT.<table>.csv``, or ``OUT.csv`` plus ``OUT.json``.

    A ``.csv`` target receives the record's first table; the record itself
    goes next to it.
    """
    if out is None and out_dir is not None:
        out = out_dir / f"{default_name}.json"
    if out is None:
        artifacts = {**record.artifacts,
                     **{name: {"header": list(t.header), "rows": encode(t.rows)}
                        for name, t in record.tables.items()}}
        inline = ResultRecord(record.config, record.metrics, artifacts, version=record.version)
        sys.stdout.write(dumps(inline) + "\n")
        return None
    artifacts = dict(record.artifacts)
    tables = list(record.tables.items())
    if out.suffix.lower() == ".csv":
        if tables:
            name, first = tables.pop(0)
            artifacts[name] = str(write_csv_table(first, out))
        json_path = out.with_suffix(".json")
    else:
        json_path = out
    for name, table in tables:
        artifacts[name] = str(write_csv_table(table, json_path.with_name(
            f"{json_path.stem}.{name}.csv")))
    return persist_result(
        ResultRecord(record.config, record.metrics, artifacts, version=record.version), json_path,
    )
