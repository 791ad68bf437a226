from __future__ import annotations

import numpy as np
import pytest

from qml.errors import ArgumentError, ParseError
from workbench.datasets import OPTDIGITS_PIXELS, Schema, load_csv_dataset


def _write(tmp_path, text: str):
    path = tmp_path / "data.csv"
    path.write_text(text, encoding="utf-8")
    return path


def _optdigits_line(pixels: list[int], label: int) -> str:
    return ",".join(str(v) for v in [*pixels, label])


# ---------------------------------------------------------------------------
# optdigits schema
# ---------------------------------------------------------------------------

def test_optdigits_zero_row_keeps_label(tmp_path):
    path = _write(tmp_path, _optdigits_line([0] * OPTDIGITS_PIXELS, 5) + "\n")
    data = load_csv_dataset(path, "optdigits")
    assert data.schema is Schema.OPTDIGITS
    assert len(data) == 1
    assert data.labels.tolist() == [5]
    image = data.images()
    assert image.shape == (1, 8, 8)
    assert not image.any()


def test_optdigits_top_pixel_scales_to_one(tmp_path):
    pixels = [0] * OPTDIGITS_PIXELS
    pixels[10] = 16
    pixels[20] = 8
    path = _write(tmp_path, _optdigits_line(pixels, 3) + "\n")
    row = load_csv_dataset(path, Schema.OPTDIGITS).features[0]
    assert row[10] == 1.0
    assert row[20] == 0.5
    assert row.max() == 1.0


def test_optdigits_pixel_above_range_rejected(tmp_path):
    good = _optdigits_line([0] * OPTDIGITS_PIXELS, 1)
    pixels = [0] * OPTDIGITS_PIXELS
    pixels[0] = 17
    path = _write(tmp_path, good + "\n" + _optdigits_line(pixels, 1) + "\n")
    with pytest.raises(ParseError, match="17") as info:
        load_csv_dataset(path, "optdigits")
    assert info.value.line == 2


def test_optdigits_short_row_rejected(tmp_path):
    path = _write(tmp_path, _optdigits_line([0] * 10, 1) + "\n")
    with pytest.raises(ParseError, match="columns"):
        load_csv_dataset(path, "optdigits")


def test_optdigits_fixture_loads(fixtures_dir):
    data = load_csv_dataset(fixtures_dir / "optdigits_small.csv", "optdigits")
    assert data.features.shape[1] == OPTDIGITS_PIXELS
    assert data.features.min() >= 0.0
    assert data.features.max() <= 1.0


# ---------------------------------------------------------------------------
# generic schema
# ---------------------------------------------------------------------------

def test_generic_fixture_skips_comment_and_header(fixtures_dir):
    data = load_csv_dataset(fixtures_dir / "generic_small.csv")
    assert data.schema is Schema.GENERIC
    assert data.features.shape == (8, 2)
    np.testing.assert_allclose(data.features[0], [0.10, 0.90])
    np.testing.assert_allclose(data.features[-1], [0.95, 0.30])
    assert data.labels.tolist() == [1, 1, 1, 1, -1, -1, -1, -1]
    assert len(data.where_label(-1)) == 4


def test_generic_without_header(tmp_path):
    path = _write(tmp_path, "1.5,2.5,0\n\n3.5,4.5,1\n")
    data = load_csv_dataset(path, "generic")
    np.testing.assert_allclose(data.features, [[1.5, 2.5], [3.5, 4.5]])
    assert data.labels.tolist() == [0, 1]


def test_generic_ragged_row_reports_line(tmp_path):
    path = _write(tmp_path, "# comment\na,b,label\n0.1,0.2,1\n\n0.3,1\n")
    with pytest.raises(ParseError, match="ragged") as info:
        load_csv_dataset(path)
    assert info.value.line == 5
    assert info.value.path == str(path)


def test_generic_non_numeric_cell_rejected(tmp_path):
    path = _write(tmp_path, "0.1,0.2,1\n0.3,oops,1\n")
    with pytest.raises(ParseError) as info:
        load_csv_dataset(path)
    assert info.value.line == 2


def test_empty_file_and_unknown_schema(tmp_path):
    path = _write(tmp_path, "# nothing here\n\n")
    with pytest.raises(ArgumentError):
        load_csv_dataset(path)
    with pytest.raises(ArgumentError, match="schema"):
        load_csv_dataset(path, "bogus")
