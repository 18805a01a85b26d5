# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

import json
import os

import pytest

from kc_core.errors import UsageError
from kernel_compress.cases import case_registry
from kernel_compress.cases.base import CompressCfg
from kernel_compress.cases.compress import compress_cases
from kernel_compress.utils.helpers import SEED_ENV

FAST_CASES = ["constant_approx", "circle", "deviation", "herding_identity", "simplex", "krr_equivalence", "mmd",
              "measure_check", "spectral_oracle"]


def test_registry():
    assert set(FAST_CASES) | {"frank_wolfe_rate", "counterexample", "determinism"} == set(case_registry.names)
    assert case_registry.slow == {"frank_wolfe_rate", "counterexample"}
    with pytest.raises(UsageError):
        case_registry.make_case("nope")


def test_registered_cfg_is_copied():
    cfg = case_registry.get_cfg("constant_approx")
    cfg.case.degrees = [1]
    assert case_registry.get_cfg("constant_approx").case.degrees == [1, 2, 3, 4]


def test_config_sections_are_per_instance():
    first, second = CompressCfg(), CompressCfg(algorithm={"T": 7, "name": "fw"})
    assert (second.algorithm.T, second.algorithm.name) == (7, "fw")
    assert first.algorithm.T == 100
    assert CompressCfg.algorithm.T == 100
    assert second.to_dict()["algorithm"]["T"] == 7
    assert "update" not in second.to_dict()


@pytest.mark.parametrize("overrides", [{"algorithm": {"steps": 3}}, {"algorithm": 3}, {"update": {}}, {"_hidden": 1}])
def test_config_rejects_unknown_fields(overrides):
    with pytest.raises(UsageError):
        CompressCfg().update(overrides)


def test_make_case_overrides():
    case = case_registry.make_case("constant_approx", overrides={"case": {"degrees": [1, 2]}})
    assert case.cfg.case.degrees == [1, 2]
    assert case_registry.get_cfg("constant_approx").case.degrees == [1, 2, 3, 4]
    with pytest.raises(UsageError, match="case.degree"):
        case_registry.make_case("constant_approx", overrides={"case": {"degree": 2}})


def test_seed_precedence(monkeypatch):
    assert case_registry.make_case("simplex", seed=7).seed == 7
    monkeypatch.setenv(SEED_ENV, "11")
    assert case_registry.make_case("simplex", seed=7).seed == 11


@pytest.mark.parametrize("name", FAST_CASES)
def test_fast_case_passes(name):
    result = case_registry.make_case(name).run()
    assert result["passed"], result["metrics"]


def test_constant_approx_table(tmp_path):
    case = case_registry.make_case("constant_approx", out_dir=str(tmp_path))
    result = case.run()
    rows = {int(r[0]): r for r in case.tables["constant_approx"][1]}
    assert sorted(rows) == [1, 2, 3, 4]
    # d = 1: h(x) = x has error 1 and the bound is tight
    assert rows[1][3] == pytest.approx(1.)
    assert rows[1][4] == pytest.approx(1.)
    for d, row in rows.items():
        assert row[3] <= row[4] + 1e-12
    assert os.path.isfile(tmp_path / "constant_approx.csv")
    with open(tmp_path / "constant_approx.json") as f:
        assert json.load(f) == json.loads(json.dumps(result))


def test_deviation_crossovers():
    metrics = case_registry.make_case("deviation").run()["metrics"]
    assert metrics["n_vc"] == 51497
    assert metrics["n_rademacher"] == 3964
    assert abs(metrics["n_vc"] / 52000 - 1.) <= 0.05


def test_plot_output(tmp_path):
    case = case_registry.make_case("constant_approx", out_dir=str(tmp_path), plot=True)
    case.run()
    assert os.path.isfile(tmp_path / "constant_approx.png")
    assert str(tmp_path / "constant_approx.png") not in case.written


def test_determinism_case():
    result = case_registry.make_case("determinism", overrides={"case": {"cases": ["constant_approx", "simplex"]}}).run()
    assert result["passed"]
    assert result["metrics"]["mismatched"] == []


@pytest.mark.slow
@pytest.mark.parametrize("name", ["frank_wolfe_rate", "counterexample"])
def test_slow_case_passes(name):
    result = case_registry.make_case(name).run()
    assert result["passed"], result["metrics"]


@pytest.mark.slow
def test_frank_wolfe_rate_observes_both_times():
    case = case_registry.make_case("frank_wolfe_rate")
    case.run()
    t_late = case.cfg.case.t_late
    for instance, steps in case.metrics["steps"].items():
        assert steps == t_late, instance
    for row in case.tables["frank_wolfe_rate"][1]:
        assert row[2] is not None and row[3] is not None


def test_frank_wolfe_rate_fails_on_short_trace(monkeypatch):
    run_fw = compress_cases.frank_wolfe
    monkeypatch.setattr(compress_cases, "frank_wolfe", lambda kernel, points, T: run_fw(kernel, points, T // 4))
    cfg = case_registry.get_cfg("frank_wolfe_rate")
    cfg.case.n = 100
    case = case_registry.make_case("frank_wolfe_rate", cfg=cfg)
    assert not case.compute()
    assert all(not row[-1] for row in case.tables["frank_wolfe_rate"][1])
