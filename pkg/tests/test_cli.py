import csv
import json

import numpy as np
import pytest

from robust_observables.cli import run
from robust_observables.learning import TrainConfig, combinations, train
from robust_observables.observables import IDENTITY_PARAMS
from robust_observables.serialize import (
    LearnedObservable, SchemaError, observable_filename, observable_to_json, read_observable,
    write_observable,
)
from robust_observables.channels import Channel
from robust_observables.states import Circuit


@pytest.fixture(scope="module")
def trained_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("all")
    assert run(["train-all", "--seed", "42", "--out", str(out)]) == 0
    return out


def identity_file(path):
    obs = LearnedObservable(Circuit.BELL_PHI_PLUS, Channel.BIT_FLIP, 0, 1, 0.1, IDENTITY_PARAMS, 0.0)
    write_observable(path, obs)
    return path


def test_json_schema_and_precision(tmp_path):
    result = train(TrainConfig(Circuit.QFT2, Channel.PHASE_FLIP, seed=5, epochs=10))
    obs = LearnedObservable.from_result(result)
    text = observable_to_json(obs)
    data = json.loads(text)
    assert list(data) == ["circuit", "channel", "seed", "epochs", "learning_rate",
                          "qubit_observables", "final_loss", "loss_history"]
    assert data["circuit"] == "qft2" and data["channel"] == "phase_flip"
    assert len(data["loss_history"]) == 11
    coeff_text = text.split('"coeffs": [')[1].split("]")[0]
    for token in coeff_text.split(","):
        mantissa = token.strip().split("e")[0].replace("-", "").replace(".", "")
        assert len(mantissa) == 17
    path = tmp_path / "o.json"
    write_observable(path, obs)
    back = read_observable(path)
    assert back.params == obs.params
    assert back.loss_history == obs.loss_history


def test_read_rejects_malformed(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(SchemaError):
        read_observable(bad)
    bad.write_text(json.dumps({"circuit": "qft2"}))
    with pytest.raises(SchemaError, match="missing"):
        read_observable(bad)


def test_toy(tmp_path):
    assert run(["toy", "--out", str(tmp_path)]) == 0
    rows = list(csv.reader(open(tmp_path / "toy.csv")))
    assert rows[0] == ["p", "exp_zz", "exp_xx", "exp_hh", "exp_o_optimized"]
    assert len(rows) == 26


def test_train(tmp_path):
    assert run(["train", "--circuit", "bell_phi_plus", "--channel", "depolarizing", "--seed", "42",
                "--out", str(tmp_path)]) == 0
    data = json.loads((tmp_path / "bell_phi_plus__depolarizing.json").read_text())
    assert data["final_loss"] <= 1e-4
    assert data["seed"] == 42 and data["epochs"] == 300 and data["learning_rate"] == 0.1


def test_train_all_outputs(trained_dir):
    files = sorted(p.name for p in trained_dir.glob("*.json"))
    assert len(files) == 31
    manifest = json.loads((trained_dir / "manifest.json").read_text())
    assert manifest["master_seed"] == 42
    assert manifest["circuits"][0] == "bell_phi_plus" and manifest["channels"][-1] == "bit_flip"
    assert [f["file"] for f in manifest["files"]] == [observable_filename(c, k) for c, k in combinations()]


def test_pair_file_reproducible_with_single_train(trained_dir, tmp_path):
    pair = json.loads((trained_dir / "qft2__phase_damping.json").read_text())
    assert run(["train", "--circuit", "qft2", "--channel", "phase_damping", "--seed", str(pair["seed"]),
                "--out", str(tmp_path)]) == 0
    assert (tmp_path / "qft2__phase_damping.json").read_text() == (trained_dir / "qft2__phase_damping.json").read_text()


def test_cross_eval(trained_dir, tmp_path):
    before = {p.name: p.read_bytes() for p in trained_dir.iterdir()}
    assert run(["cross-eval", "--in", str(trained_dir), "--out", str(tmp_path)]) == 0
    assert {p.name: p.read_bytes() for p in trained_dir.iterdir()} == before
    rows = list(csv.DictReader(open(tmp_path / "crosseval.csv")))
    assert len(rows) == 900
    assert list(rows[0]) == ["observable_circuit", "observable_channel", "eval_circuit", "eval_channel",
                             "mean", "std", "min", "max"]
    hist = list(csv.DictReader(open(tmp_path / "histogram.csv")))
    assert sum(int(r["count"]) for r in hist) == 900
    summary = json.loads((tmp_path / "crosseval_summary.json").read_text())
    assert len(summary["seeds"]) == 30


def test_commands_are_idempotent(trained_dir, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert run(["cross-eval", "--in", str(trained_dir), "--out", str(out)]) == 0
        assert run(["toy", "--out", str(out)]) == 0
    for name in ("crosseval.csv", "histogram.csv", "crosseval_summary.json", "toy.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_cross_eval_errors(trained_dir, tmp_path, capsys):
    assert run(["cross-eval", "--in", str(tmp_path / "missing"), "--out", str(tmp_path)]) == 1
    partial = tmp_path / "partial"
    partial.mkdir()
    for p in list(trained_dir.glob("*.json"))[:5]:
        (partial / p.name).write_bytes(p.read_bytes())
    assert run(["cross-eval", "--in", str(partial), "--out", str(tmp_path)]) == 1
    assert "expected 30" in capsys.readouterr().err


def test_check_identity(tmp_path, capsys):
    path = identity_file(tmp_path / "id.json")
    assert run(["check", "--observable", str(path), "--circuit", "bell_phi_plus", "--channel", "bit_flip"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["sum_residual"] < 1e-15
    assert report["state_gap"] < 1e-12
    assert len(report["per_kraus_residuals"]) == 4


def test_props(tmp_path, capsys):
    path = identity_file(tmp_path / "id.json")
    assert run(["props", "--observable", str(path), "--out", str(tmp_path)]) == 0
    report = json.loads(capsys.readouterr().out)
    np.testing.assert_allclose(report["eigenvalues"], [1, 1, 1, 1])
    assert report["pauli_coefficients"]["II"] == 1
    assert (tmp_path / "props.json").exists()


@pytest.mark.parametrize(
    "argv",
    [
        ["train", "--circuit", "ghz", "--channel", "bit_flip"],
        ["train", "--circuit", "qft2", "--channel", "thermal"],
        ["props", "--observable", "/nonexistent/file.json"],
        ["check", "--observable", "x.json", "--circuit", "qft2", "--channel", "bit_flip", "--rate", "1.0"],
        ["train", "--circuit", "qft2", "--channel", "bit_flip", "--epochs", "0"],
    ],
)
def test_validation_errors_exit_1(argv, capsys):
    assert run(argv) == 1
    assert capsys.readouterr().err


def test_malformed_json_exit_1(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2")
    assert run(["props", "--observable", str(bad)]) == 1


def test_computation_failure_exit_2(tmp_path):
    assert run(["train", "--circuit", "bell_phi_plus", "--channel", "depolarizing", "--lr", "1e4",
                "--epochs", "400", "--grad-mode", "analytic", "--out", str(tmp_path)]) == 2
