# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

import math

import pytest
import torch

from kc_core.algorithms import error_sq, frank_wolfe
from kc_core.errors import UsageError
from kc_core.kernels import FeatureMapKernel, LinearKernel, PointSet, extended, y_weighted
from kc_core.learn import (MMDMode, RegressionMode, Regularizer, hierarchical_compress, krr_fit, krr_predict, mmd_sq,
                           mmd_sq_compressed, simultaneous_coreset, simultaneous_kernel)
from kc_core.storage import Coreset


def labelled(generator, n, dim):
    X = torch.randn(n, dim, generator=generator)
    y = X @ torch.randn(dim, generator=generator) + 0.1 * torch.randn(n, generator=generator)
    return PointSet(X, y)


def test_krr_single_atom():
    points = PointSet(torch.tensor([[2.], [5.]]), torch.tensor([3., 1.]))
    coreset = Coreset([0], torch.tensor([1.]), 2)
    reg = krr_fit(LinearKernel(), coreset, points, lam=0.5)
    assert float(reg.alpha[0]) == pytest.approx(3. / (4. + 0.5))
    assert krr_predict(reg, [2.]) == pytest.approx(float(reg.alpha[0]) * 4.)


def test_krr_matches_dense_ridge(generator):
    for n in (10, 25, 40):
        points = labelled(generator, n, 3)
        lam = 1e-2
        reg = krr_fit(LinearKernel(), Coreset.uniform(range(n), n), points, lam=lam)
        K = LinearKernel()(points.points)
        dense = torch.linalg.solve(K + n * lam * torch.eye(n), points.labels)
        assert torch.allclose(reg.alpha, dense, rtol=1e-9, atol=1e-9 * float(dense.abs().max()))


def test_krr_modes_coincide_full_rank(generator):
    points = labelled(generator, 30, 10)
    coreset = Coreset([1, 4, 9, 16], torch.tensor([0.1, 0.2, 0.3, 0.4]), 30)
    sub = krr_fit(LinearKernel(), coreset, points, lam=1e-3, mode=RegressionMode.Suboptimal)
    minimal = krr_fit(LinearKernel(), coreset, points, lam=1e-3, mode="min")
    assert torch.allclose(sub.alpha, minimal.alpha, rtol=1e-8, atol=1e-10)


def test_krr_minimal_norm_rank_deficient(generator):
    X = torch.randn(20, 2, generator=generator)
    points = PointSet(X, torch.randn(20, generator=generator))
    coreset = Coreset.uniform(range(6), 20)
    sub = krr_fit(LinearKernel(), coreset, points, lam=1e-2)
    minimal = krr_fit(LinearKernel(), coreset, points, lam=1e-2, mode=RegressionMode.MinimalNorm)
    assert float(minimal.alpha.norm()) <= float(sub.alpha.norm()) + 1e-9


def test_krr_identity_regularizer(generator):
    points = labelled(generator, 12, 2)
    reg = krr_fit(LinearKernel(), Coreset.uniform(range(12), 12), points, lam=0.1, regularizer=Regularizer.Identity)
    K = LinearKernel()(points.points)
    assert torch.allclose(reg.alpha, torch.linalg.solve(K + 0.1 * torch.eye(12), points.labels), atol=1e-10)
    assert reg.to_dict()["regularizer"] == "identity"


def test_krr_rejects_bad_input(generator):
    points = labelled(generator, 5, 2)
    with pytest.raises(UsageError):
        krr_fit(LinearKernel(), Coreset.uniform([0], 5), points, lam=0.)
    with pytest.raises(UsageError):
        krr_fit(LinearKernel(), Coreset.uniform([0], 6), points)


def test_simultaneous_error_decomposes(generator):
    points = labelled(generator, 40, 2)
    kernel = LinearKernel()
    coreset = simultaneous_coreset(kernel, points, 15)
    aug = points.augmented()
    total = error_sq(simultaneous_kernel(kernel), coreset, aug)
    parts = error_sq(extended(kernel), coreset, aug) + error_sq(y_weighted(kernel), coreset, aug)
    assert total == pytest.approx(parts, abs=1e-10)


def test_simultaneous_zero_labels(generator):
    X = torch.randn(20, 2, generator=generator)
    points = PointSet(X, torch.zeros(20))
    aug = points.augmented()
    assert torch.equal(y_weighted(LinearKernel())(aug.points), torch.zeros(20, 20))
    single = PointSet(X[:1], torch.ones(1))
    coreset = simultaneous_coreset(LinearKernel(), single, 1)
    assert error_sq(simultaneous_kernel(LinearKernel()), coreset, single.augmented()) == pytest.approx(0., abs=1e-12)
    with pytest.raises(UsageError):
        simultaneous_coreset(LinearKernel(), PointSet(X), 3)


def test_mmd_exact(generator):
    kernel = LinearKernel()
    A = PointSet(torch.randn(30, 2, generator=generator))
    assert mmd_sq(kernel, A, A).mmd_sq == pytest.approx(0., abs=1e-10)
    x, y = PointSet(torch.tensor([[1., 2.]])), PointSet(torch.tensor([[-1., 0.5]]))
    expected = kernel.eval([1., 2.], [1., 2.]) + kernel.eval([-1., .5], [-1., .5]) - 2. * kernel.eval([1., 2.], [-1., .5])
    assert mmd_sq(kernel, x, y).mmd_sq == pytest.approx(expected)

    features = FeatureMapKernel.from_basis("monomial", [1, 2], input_dim=2)
    B = PointSet(torch.randn(25, 2, generator=generator) + 0.5)
    diff = features.features(A.points).mean(dim=0) - features.features(B.points).mean(dim=0)
    assert mmd_sq(features, A, B).mmd_sq == pytest.approx(float(diff @ diff), rel=1e-10)
    with pytest.raises(UsageError):
        mmd_sq(kernel, A, PointSet(torch.randn(5, 3, generator=generator)))


def test_mmd_compressed_budget(generator):
    kernel = LinearKernel()
    A = PointSet(torch.randn(80, 2, generator=generator))
    B = PointSet(torch.randn(60, 2, generator=generator) + 0.3)
    full = mmd_sq_compressed(kernel, Coreset.uniform(range(80), 80), A, Coreset.uniform(range(60), 60), B)
    assert full.mmd_sq == pytest.approx(mmd_sq(kernel, A, B).mmd_sq, abs=1e-12)

    cA, _ = frank_wolfe(kernel, A, 6)
    cB, _ = frank_wolfe(kernel, B, 6)
    result = mmd_sq_compressed(kernel, cA, A, cB, B)
    exact = mmd_sq(kernel, A, B).mmd_sq
    assert result.mode == MMDMode.Compressed
    assert abs(math.sqrt(result.mmd_sq) - math.sqrt(exact)) <= result.error_budget + 1e-10
    assert mmd_sq_compressed(kernel, cA, A, cA, A).mmd_sq == pytest.approx(0., abs=1e-12)


def test_hierarchical_compress(generator):
    kernel = FeatureMapKernel.from_basis("monomial", [1, 2], input_dim=2)
    points = PointSet(torch.randn(100, 2, generator=generator))
    coreset = hierarchical_compress(kernel, points, batch_size=10, per_batch_T=5, final_T=8)
    stages = coreset.meta["stage_errors"]
    assert coreset.n_source == 100
    assert math.sqrt(error_sq(kernel, coreset, points)) <= stages["batches"] + stages["recompress"] + 1e-10

    single = hierarchical_compress(kernel, points, batch_size=100, final_T=8)
    direct, _ = frank_wolfe(kernel, points, 8)
    assert single.indices == direct.indices
    assert torch.allclose(single.weights, direct.weights)
