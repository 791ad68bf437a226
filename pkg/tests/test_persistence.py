from __future__ import annotations

import math

import numpy as np
import pytest

from qml.errors import ParseError
from workbench.persistence import ResultRecord, decode_matrix, load_result, persist_result

AWKWARD_FLOATS = {
    "third": 1 / 3,
    "tiny": math.pi * 1e-17,
    "big": 2.0**60 + 2.0**8,
    "negative": -math.e,
    "near_one": 1.0 - 2.0**-52,
    "subnormal": 5e-324,
}


def test_floats_survive_persist_and_load_exactly(tmp_path):
    matrix = np.array([[1 / 3, math.sqrt(2) * 1j], [-1e-300, 0.1 + 0.2j]])
    record = ResultRecord(
        config={"seed": 7},
        metrics={**AWKWARD_FLOATS, "numpy": np.float64(0.1) + np.float64(0.2)},
        artifacts={"series": [0.1 * k for k in range(1, 8)], "matrix": matrix},
    )
    loaded = load_result(persist_result(record, tmp_path / "nested" / "result.json"))
    for key, value in AWKWARD_FLOATS.items():
        assert loaded["metrics"][key] == value
    assert loaded["metrics"]["numpy"] == 0.30000000000000004
    assert loaded["artifacts"]["series"] == [0.1 * k for k in range(1, 8)]
    assert np.array_equal(decode_matrix(loaded["artifacts"]["matrix"]), matrix)


def test_load_result_rejects_non_records(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text('{\n  "config": \n', encoding="utf-8")
    with pytest.raises(ParseError):
        load_result(broken)
    bare = tmp_path / "bare.json"
    bare.write_text("[1, 2, 3]\n", encoding="utf-8")
    with pytest.raises(ParseError, match="not a result record"):
        load_result(bare)
