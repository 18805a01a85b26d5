# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

import json
import math
import os

import pytest
import torch

from kernel_compress.scripts.kc import main
from kernel_compress.utils.helpers import file_digest, get_args


def read_json(path):
    with open(path) as f:
        return json.load(f)


def tree_digests(root):
    out = {}
    for directory, _, files in os.walk(root):
        for name in files:
            path = os.path.join(directory, name)
            out[os.path.relpath(path, root)] = file_digest(path)
    return out


def test_missing_input_is_usage_error(tmp_path, capsys):
    out = tmp_path / "out" / "coreset.json"
    code = main(["compress", "--input", str(tmp_path / "missing.csv"), "--out", str(out)])
    assert code == 2
    assert "not found" in capsys.readouterr().err
    assert not (tmp_path / "out").exists()


def test_bad_arguments_are_usage_errors():
    assert main([]) == 2
    assert main(["compress"]) == 2
    assert main(["compress", "--input", "x.csv", "--algo", "greedy"]) == 2


def test_diagnose_delta_kminus(tmp_path, write_points):
    path = write_points("delta.csv", [[0.], [1.]])
    out = tmp_path / "report.json"
    code = main(["diagnose", "--input", path, "--kernel", '{"kind": "delta", "params": {"num_labels": 2}}',
                 "--variant", "kminus", "--out", str(out)])
    assert code == 0
    report = read_json(out)
    assert report["bound_variant"] == "KMinus"
    assert report["d_used"] == 2
    assert report["lambda_min"] == pytest.approx(1.)
    assert report["diam_lower"] == pytest.approx(0.5 * math.sqrt(0.5), abs=1e-5)
    assert report["estimated"] is False
    assert "c_sq=0.5" in report["notes"]
    manifest = read_json(tmp_path / "manifest.json")
    assert manifest["subcommand"] == "diagnose"
    assert list(manifest["inputs"]) == ["delta.csv"]
    assert list(manifest["outputs"]) == ["report.json"]


def test_diagnose_kplus_with_ball(tmp_path, write_points):
    path = write_points("line.csv", [[-1.], [1.]])
    code = main(["diagnose", "--input", path, "--kernel", '{"kind": "poly_no_const", "params": {"degree": 1}}',
                 "--q", "0.1", "--out", str(tmp_path / "report.json")])
    assert code == 0
    assert read_json(tmp_path / "report.json")["diam_lower"] == pytest.approx(0.5)
    ball = read_json(tmp_path / "ball.json")
    assert ball["b"] == pytest.approx(0.5)
    assert ball["n_threshold"] > 0


def test_compress_krr_mmd(tmp_path, write_points, generator):
    X = torch.randn(50, 2, generator=generator)
    y = X[:, 0] - 2. * X[:, 1]
    data = write_points("data.csv", X, y)
    out = tmp_path / "run"

    assert main(["compress", "--input", data, "--algo", "fw", "--T", "20", "--out", str(out / "coreset.json")]) == 0
    coreset = read_json(out / "coreset.json")
    assert abs(sum(coreset["weights"]) - 1.) <= 1e-12
    assert coreset["kernel"] == {"kind": "linear", "params": {}}
    with open(out / "trace.csv") as f:
        assert f.readline().strip() == "t,chosen_index,step,error_sq"
    assert set(read_json(out / "manifest.json")["outputs"]) == {"coreset.json", "trace.csv"}

    query = write_points("query.csv", X[:5])
    assert main(["krr", "--coreset", str(out / "coreset.json"), "--input", data, "--lambda", "0.01",
                 "--predict", query, "--out", str(out / "regressor.json")]) == 0
    assert read_json(out / "regressor.json")["mode"] == "Suboptimal"
    with open(out / "predictions.csv") as f:
        lines = f.read().splitlines()
    assert lines[0] == "x1,x2,prediction" and len(lines) == 6

    other = write_points("other.csv", torch.randn(40, 2, generator=generator) + 1.)
    assert main(["mmd", "--a", data, "--b", other, "--out", str(out / "mmd.json")]) == 0
    exact = read_json(out / "mmd.json")
    assert exact["mode"] == "Exact" and exact["mmd_sq"] > 0.
    assert main(["mmd", "--a", data, "--b", other, "--compress", "8", "--out", str(out / "mmd_c.json")]) == 0
    compressed = read_json(out / "mmd_c.json")
    assert abs(math.sqrt(compressed["mmd_sq"]) - math.sqrt(exact["mmd_sq"])) <= compressed["error_budget"] + 1e-10


def test_compress_simultaneous(tmp_path, write_points, generator):
    X = torch.randn(30, 2, generator=generator)
    data = write_points("data.csv", X, X.sum(dim=1))
    out = tmp_path / "coreset.json"
    assert main(["compress", "--input", data, "--simultaneous", "--T", "10", "--out", str(out)]) == 0
    assert read_json(out)["kernel"]["kind"] == "sum"
    assert read_json(out)["n_source"] == 30


@pytest.mark.parametrize("flag", ["--with_ysq", "--with-ysq"])
def test_with_ysq_spellings(flag):
    assert get_args(["compress", "--input", "x.csv", flag]).with_ysq
    assert not get_args(["compress", "--input", "x.csv"]).with_ysq


def test_seed_recorded(tmp_path, write_points, monkeypatch):
    data = write_points("data.csv", [[0.], [1.], [2.]])
    assert main(["--seed", "5", "compress", "--input", data, "--T", "3", "--out", str(tmp_path / "a.json")]) == 0
    assert read_json(tmp_path / "manifest.json")["config"]["seed"] == 5
    monkeypatch.setenv("KC_SEED", "9")
    assert main(["compress", "--input", data, "--T", "3", "--seed", "5", "--out", str(tmp_path / "a.json")]) == 0
    assert read_json(tmp_path / "manifest.json")["config"]["seed"] == 9


def test_counterexample_command(tmp_path):
    out = tmp_path / "ce"
    assert main(["counterexample", "--T", "1000", "--nmax", "40", "--profile", "5", "--out-dir", str(out)]) == 0
    assert {"trace.csv", "profile_m5.csv", "invariants.json", "measure_check.json", "manifest.json"} <= set(os.listdir(out))
    invariants = read_json(out / "invariants.json")
    assert invariants["invariants"]["ok"] and invariants["divergence"]["ok"]
    with open(out / "trace.csv") as f:
        assert f.readline().strip() == "t,kind,n,i,norm_sq"


def test_counterexample_unreachable_m(tmp_path):
    assert main(["counterexample", "--T", "50", "--profile", "1000", "--out-dir", str(tmp_path / "ce")]) == 2
    assert not (tmp_path / "ce").exists()


def test_repro_list(capsys):
    assert main(["repro", "--list"]) == 0
    out = capsys.readouterr().out
    assert "constant_approx" in out and "counterexample (slow)" in out


def test_repro_unknown_case(tmp_path):
    assert main(["repro", "--case", "nope", "--out-dir", str(tmp_path / "r")]) == 2
    assert not (tmp_path / "r").exists()


def test_repro_is_deterministic(tmp_path):
    args = ["repro", "--case", "constant_approx", "--case", "deviation", "--case", "simplex", "--seed", "3"]
    assert main(args + ["--out-dir", str(tmp_path / "first")]) == 0
    assert main(args + ["--out-dir", str(tmp_path / "second")]) == 0
    first, second = tree_digests(tmp_path / "first"), tree_digests(tmp_path / "second")
    assert first == second
    assert {"summary.json", "summary.csv", "manifest.json", os.path.join("constant_approx", "constant_approx.csv")} <= set(first)
    summary = read_json(tmp_path / "first" / "summary.json")
    assert summary["passed"] and [c["case"] for c in summary["cases"]] == ["constant_approx", "deviation", "simplex"]
