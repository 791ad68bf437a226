from __future__ import annotations

import csv
import json

import numpy as np
import pytest

from qml.config import SimConfig
from qml.constants import DEFAULT_MAX_QUBITS
from qml.errors import NumericError
from qml.sim.paulis import pauli_matrix
from workbench.acceptance import CAT_WEIGHTS
from workbench.config import ExperimentConfig
from workbench.main import EXIT_ARGUMENT, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, run
from workbench.persistence import decode_matrix, load_result


def test_usage_errors_exit_64():
    assert run([]) == EXIT_USAGE
    assert run(["no-such-command"]) == EXIT_USAGE
    assert run(["blockenc", "--bogus"]) == EXIT_USAGE


def test_missing_required_input_exits_2():
    assert run(["transformer"]) == EXIT_ARGUMENT


def test_missing_file_exits_2(tmp_path):
    assert run(["kernel", "--data", str(tmp_path / "absent.csv")]) == EXIT_ARGUMENT


def test_blockenc_demo_record(tmp_path):
    out = tmp_path / "be.json"
    assert run(["blockenc", "--out", str(out)]) == EXIT_OK
    metrics = load_result(out)["metrics"]
    assert metrics["alpha"] == pytest.approx(1.0)
    assert metrics["ancillas"] == 1
    assert metrics["extract_error"] < 1e-12
    assert metrics["queries"] == {"A": 1}


def test_blockenc_matrix_file(tmp_path, fixtures_dir):
    out = tmp_path / "be.json"
    assert run(["blockenc", "--matrix", str(fixtures_dir / "demo_matrix.json"),
                "--out", str(out)]) == EXIT_OK
    record = load_result(out)
    assert record["metrics"]["alpha"] == pytest.approx(1.0)
    expected = 0.36 * pauli_matrix("IZ") + 0.64 * pauli_matrix("XX")
    np.testing.assert_allclose(decode_matrix(record["artifacts"]["extract"]), expected, atol=1e-12)


def test_transformer_fixture_run(tmp_path, fixtures_dir):
    out = tmp_path / "tf.json"
    assert run(["transformer", "--instance", str(fixtures_dir / "transformer_cat.json"),
                "--out", str(out)]) == EXIT_OK
    record = load_result(out)
    assert record["metrics"]["j"] == 1
    assert record["metrics"]["cosine_similarity"] >= 1 - 1e-9
    assert record["metrics"]["resource_report"]["kind"] == "construction count"
    np.testing.assert_allclose(record["artifacts"]["fixture_attention_weights"], CAT_WEIGHTS,
                               atol=5e-4)


def test_kernel_csv_route(tmp_path, fixtures_dir):
    out = tmp_path / "k.csv"
    assert run(["kernel", "--data", str(fixtures_dir / "optdigits_small.csv"),
                "--limit", "6", "--out", str(out)]) == EXIT_OK
    with out.open(newline="") as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 7
    record = load_result(out.with_suffix(".json"))
    assert record["metrics"]["size"] == 6
    assert record["metrics"]["symmetric"] is True
    assert record["metrics"]["min_eigenvalue"] > -1e-10


def test_config_file_sits_under_flags(tmp_path, fixtures_dir):
    out = tmp_path / "qp.json"
    conf = str(fixtures_dir / "example.conf")
    assert run(["qperceptron", "--config", conf, "--d", "16", "--out", str(out)]) == EXIT_OK
    record = load_result(out)
    assert record["config"]["seed"] == 7
    assert record["config"]["params"]["d"] == 16
    assert record["config"]["params"]["gamma"] == "0.3"
    assert record["metrics"]["d"] == 16

    assert run(["qperceptron", "--config", conf, "--d", "16", "--seed", "3",
                "--out", str(out)]) == EXIT_OK
    assert load_result(out)["config"]["seed"] == 3


def test_bad_config_seed_exits_2(tmp_path):
    conf = tmp_path / "bad.conf"
    conf.write_text("seed = seven\n")
    assert run(["grover", "--n", "3", "--config", str(conf)]) == EXIT_ARGUMENT


def test_stdout_route(capsys):
    assert run(["grover", "--n", "3", "--seed", "1"]) == EXIT_OK
    record = json.loads(capsys.readouterr().out)
    assert record["metrics"]["num_qubits"] == 3
    assert record["metrics"]["amplitude_error"] < 1e-9
    assert record["config"]["seed"] == 1


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("QMLWB_SEED", "11")
    assert run(["grover", "--n", "2"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["config"]["seed"] == 11


def test_invalid_integer_environment_falls_back(monkeypatch, caplog):
    monkeypatch.setenv("QMLWB_SEED", "eleven")
    monkeypatch.setenv("QML_MAX_QUBITS", "lots")
    config = ExperimentConfig(subcommand="grover")
    assert config.seed == 0
    assert config.max_qubits == SimConfig().max_qubits == DEFAULT_MAX_QUBITS
    assert "Invalid integer for QMLWB_SEED" in caplog.text
    assert "Invalid integer for QML_MAX_QUBITS" in caplog.text


def test_numeric_failure_exits_3(monkeypatch):
    def fail(*args, **kwargs):
        raise NumericError("forced")

    monkeypatch.setattr("workbench.commands.grover.grover_search", fail)
    assert run(["grover", "--n", "3"]) == EXIT_NUMERIC


def test_unexpected_failure_exits_3(monkeypatch):
    def fail(*args, **kwargs):
        raise RuntimeError("boom")

    monkeypatch.setattr("workbench.commands.grover.grover_search", fail)
    assert run(["grover", "--n", "3"]) == EXIT_NUMERIC


def test_plain_value_error_exits_2(monkeypatch):
    def fail(*args, **kwargs):
        raise ValueError("bad input")

    monkeypatch.setattr("workbench.commands.grover.grover_search", fail)
    assert run(["grover", "--n", "3"]) == EXIT_ARGUMENT


def test_linalg_failure_exits_3(monkeypatch):
    def fail(*args, **kwargs):
        raise np.linalg.LinAlgError("SVD did not converge")

    monkeypatch.setattr("workbench.commands.grover.grover_search", fail)
    assert run(["grover", "--n", "3"]) == EXIT_NUMERIC


@pytest.mark.parametrize("m", ["9", "0", "-1"])
def test_marked_count_outside_register_exits_2(m):
    assert run(["grover", "--n", "3", "--m", m]) == EXIT_ARGUMENT


def test_unknown_instance_mode_exits_2(tmp_path, fixtures_dir):
    instance = json.loads((fixtures_dir / "transformer_cat.json").read_text(encoding="utf-8"))
    instance["mode"] = "bogus"
    path = tmp_path / "bogus.json"
    path.write_text(json.dumps(instance), encoding="utf-8")
    assert run(["transformer", "--instance", str(path)]) == EXIT_ARGUMENT


def test_config_file_values_bypassing_choices_exit_2(tmp_path, fixtures_dir):
    conf = tmp_path / "bad.conf"
    conf.write_text("schema = bogus\n")
    assert run(["kernel", "--data", str(fixtures_dir / "optdigits_small.csv"),
                "--config", str(conf)]) == EXIT_ARGUMENT
    conf.write_text("sampler = bogus\n")
    assert run(["norm-study", "--config", str(conf)]) == EXIT_ARGUMENT


def test_register_cap_flag():
    argv = ["simulate", "--state", "ghz", "--qubits", "6", "--max-qubits", "4"]
    assert run(argv) == EXIT_ARGUMENT


def test_acceptance_core_quick(tmp_path):
    out = tmp_path / "acc.json"
    assert run(["acceptance", "--suite", "core", "--quick", "--only", "1,2",
                "--out", str(out)]) == EXIT_OK
    record = load_result(out)
    assert record["metrics"]["failed"] == []
    assert record["metrics"]["passed"] == 2
    with (tmp_path / "acc.criteria.csv").open(newline="") as fh:
        assert len(list(csv.reader(fh))) == 3
