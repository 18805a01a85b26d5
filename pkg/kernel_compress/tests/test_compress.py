# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

import os

import pytest
import torch

from kc_core.algorithms import (KernelHerding, epsnet_compress, error_sq, frank_wolfe, herd, make_oracle,
                                near_mean_extremes)
from kc_core.errors import PreconditionError, UsageError
from kc_core.kernels import DeltaKernel, FeatureMapKernel, LinearKernel, PointSet
from kc_core.runners import CompressionRunner
from kc_core.storage import Coreset


def test_herd_single_point():
    points = PointSet(torch.tensor([[0.3, -0.2]]))
    coreset, trace = herd(LinearKernel(), points, 5)
    assert coreset.indices == [0] * 5
    assert float(trace.error_sq.abs().max()) == pytest.approx(0., abs=1e-14)


def test_herd_two_points_alternate():
    points = PointSet(torch.tensor([-1., 1.]))
    coreset, trace = herd(LinearKernel(), points, 20)
    assert all(a != b for a, b in zip(coreset.indices, coreset.indices[1:]))
    t = torch.arange(1, 21, dtype=torch.float64)
    assert (trace.error_sq <= 1. / t**2 + 1e-15).all()


def test_herd_identity(generator):
    points = PointSet(torch.randn(50, 3, generator=generator))
    alg = KernelHerding(make_oracle(LinearKernel(), points), check_identity=False)
    for t in range(1, 101):
        record = alg.step()
        assert alg.w_norm_sq == pytest.approx(t**2 * record.error_sq, rel=1e-9, abs=1e-9 * t**2)


def test_herd_init_index_and_ties():
    points = PointSet(torch.tensor([-1., 1., -1., 1.]))
    coreset, _ = herd(LinearKernel(), points, 3, init_index=1)
    assert coreset.indices[0] == 1
    # scores of equal points tie; the smallest index wins
    assert coreset.indices[1] == 0
    with pytest.raises(UsageError):
        herd(LinearKernel(), points, 3, init_index=4)


def test_herd_streaming_matches_dense(generator):
    points = PointSet(torch.randn(40, 2, generator=generator))
    dense, _ = herd(LinearKernel(), points, 30)
    streaming, _ = herd(LinearKernel(), points, 30, streaming=True)
    assert dense.indices == streaming.indices


def test_frank_wolfe_single_point():
    coreset, trace = frank_wolfe(LinearKernel(), PointSet(torch.tensor([[2., 1.]])), 10)
    assert trace.step_size[0] == 1.
    assert coreset.indices == [0] and float(coreset.weights[0]) == 1.
    assert float(trace.error_sq[-1]) == pytest.approx(0., abs=1e-14)


def test_frank_wolfe_monotone(generator):
    points = PointSet(torch.rand(200, 2, generator=generator) * 2. - 1.)
    kernel = FeatureMapKernel.from_basis("monomial", [1, 2], input_dim=2)
    coreset, trace = frank_wolfe(kernel, points, 100)
    errors = trace.error_sq
    assert (errors[1:] <= errors[:-1] + 1e-12).all()
    assert float(coreset.weights.sum()) == pytest.approx(1., abs=1e-12)
    assert error_sq(kernel, coreset, points) == pytest.approx(float(errors[-1]), abs=1e-10)


def test_frank_wolfe_beats_herding_on_triangle():
    points = PointSet(torch.tensor([[0., 0.], [1., 0.], [0., 1.]]))
    kernel = FeatureMapKernel.from_basis("identity", input_dim=2)
    fw, _ = frank_wolfe(kernel, points, 50)
    hd, _ = herd(kernel, points, 50)
    assert error_sq(kernel, fw, points) <= error_sq(kernel, hd, points) + 1e-12


def _uniform_simplex(d, per_vertex, generator):
    labels = torch.arange(d).repeat(per_vertex)[torch.randperm(d * per_vertex, generator=generator)]
    return labels, PointSet(labels.to(torch.float64))


def _feature_error_sq(labels, coreset, d):
    # delta-kernel features: coordinate l is the mass on label l
    target = torch.bincount(labels, minlength=d).to(torch.float64) / labels.numel()
    approx = torch.zeros(d, dtype=torch.float64)
    approx.index_add_(0, labels[torch.tensor(coreset.indices, dtype=torch.long)], coreset.weights)
    return float(((approx - target) ** 2).sum())


@pytest.mark.parametrize("d", [1, 2, 5, 10])
def test_frank_wolfe_simplex_recovery(d, generator):
    labels, points = _uniform_simplex(d, 15, generator)
    coreset, trace = frank_wolfe(DeltaKernel(d), points, d)
    assert len(trace) == d
    assert coreset.size == d
    assert _feature_error_sq(labels, coreset, d) <= 1e-20


def test_frank_wolfe_runs_past_exact_fit(generator):
    labels, points = _uniform_simplex(3, 4, generator)
    coreset, trace = frank_wolfe(DeltaKernel(3), points, 10)
    assert len(trace) == 10
    assert _feature_error_sq(labels, coreset, 3) <= 1e-20


def test_epsnet():
    points = PointSet(torch.linspace(0., 1., 101), domain_box=(0., 1.))
    assert epsnet_compress(points, 0.25).size == 4
    single = epsnet_compress(points, 2.)
    assert single.size == 1 and float(single.weights[0]) == 1.
    with pytest.raises(UsageError):
        epsnet_compress(points, 0.)


def test_epsnet_error_holder(generator):
    # identity features are 1-Lipschitz: the error is at most eps
    points = PointSet(torch.rand(500, 2, generator=generator), domain_box=(0., 1.))
    kernel = LinearKernel()
    for eps in (0.5, 0.2, 0.1):
        coreset = epsnet_compress(points, eps, kernel)
        assert error_sq(kernel, coreset, points) ** 0.5 <= eps


def test_error_sq(generator):
    X = torch.randn(30, 3, generator=generator)
    points = PointSet(X)
    kernel = LinearKernel()
    assert error_sq(kernel, Coreset.uniform(range(30), 30), points) == pytest.approx(0., abs=1e-12)
    single = PointSet(X[:1])
    assert error_sq(kernel, Coreset.uniform([0], 1), single) == pytest.approx(0., abs=1e-12)

    coreset = Coreset([3, 7, 11], torch.tensor([0.2, 0.3, 0.5]), 30)
    direct = ((coreset.weights[:, None] * X[coreset.indices]).sum(dim=0) - X.mean(dim=0)).pow(2).sum()
    assert error_sq(kernel, coreset, points) == pytest.approx(float(direct), abs=1e-10)


def test_near_mean_extremes():
    kernel = LinearKernel()
    same = PointSet(torch.tensor([[1., 0.]] * 4))
    assert near_mean_extremes(kernel, same, 0.1) == [0, 1, 2, 3]
    antipodal = PointSet(torch.tensor([[1., 0.], [-1., 0.]]))
    assert near_mean_extremes(kernel, antipodal, 0.5) == []
    with pytest.raises(PreconditionError):
        near_mean_extremes(kernel, PointSet(torch.tensor([[2., 0.]])), 0.5)


def test_coreset_save_load(tmp_path):
    coreset = Coreset([2, 0, 2], torch.tensor([0.25, 0.25, 0.5]), 4, kernel={"kind": "linear", "params": {}})
    path = str(tmp_path / "coreset.json")
    coreset.save(path)
    loaded = Coreset.load(path)
    assert loaded.indices == [2, 0, 2]
    assert torch.equal(loaded.weights, coreset.weights)
    assert loaded.compact().indices == [2, 0]
    assert loaded.compact().weights.tolist() == [0.75, 0.25]


def test_compression_runner(tmp_path, generator):
    points = PointSet(torch.randn(60, 2, generator=generator))
    cfg = {"algorithm": {"name": "fw", "T": 20}, "runner": {"verbose": False, "print_interval": 5}}
    log_dir = str(tmp_path / "tb")
    coreset, trace = CompressionRunner(LinearKernel(), points, cfg, log_dir=log_dir).run()
    assert len(trace) <= 20
    assert coreset.kernel == {"kind": "linear", "params": {}}
    assert any(name.startswith("events.out.tfevents") for name in os.listdir(log_dir))

    with pytest.raises(UsageError):
        CompressionRunner(LinearKernel(), points, {"algorithm": {"name": "greedy"}, "runner": {}})
