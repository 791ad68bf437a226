from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from qml.transformer import WeightSet

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def demo_terms() -> list[tuple[float, str]]:
    return [(0.36, "IZ"), (0.64, "XX")]


@pytest.fixture
def cat_tokens() -> np.ndarray:
    return np.array([[1, 0, 1, 0], [0, 1, 1, 1], [1, 1, 0, 1]], dtype=float)


@pytest.fixture
def cat_weights() -> WeightSet:
    from workbench.acceptance import cat_weights

    return cat_weights()


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch: pytest.MonkeyPatch) -> None:
    for name in ("QMLWB_SEED", "QMLWB_OUT_DIR", "QMLWB_LOG_LEVEL", "QML_MAX_QUBITS",
                 "QML_COMPOSE_QUBIT_LIMIT", "QML_MLE_MAX_ITER"):
        monkeypatch.delenv(name, raising=False)
