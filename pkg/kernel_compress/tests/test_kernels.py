# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

import pytest
import torch

from kc_core.errors import ConstantNotRepresentableError, UsageError
from kc_core.kernels import (ConstantKernel, DeltaKernel, FeatureMapKernel, LinearKernel, PointSet,
                             PolynomialNoConstKernel, estimate_const_norm, extended, gram, kernel_from_config,
                             kernel_sum, minus_constant, plus_constant, squared, y_weighted, zero_kernel)


def test_delta_gram_is_identity():
    points = PointSet(torch.tensor([1., 2., 3.]))
    assert torch.equal(gram(DeltaKernel(3), points).entries, torch.eye(3))


def test_polynomial_entry():
    assert PolynomialNoConstKernel(2).eval(1., 1.) == 2.


def test_feature_map_gram_is_diag():
    # h = indicator of 0, f = r * indicator of 1
    r = 0.5
    kernel = FeatureMapKernel.from_basis("identity", input_dim=2)
    points = PointSet(torch.tensor([[1., 0.], [0., r]]))
    assert torch.allclose(gram(kernel, points).entries, torch.diag(torch.tensor([1., r**2])))


def test_plus_constant():
    k1 = PolynomialNoConstKernel(1)
    assert plus_constant(k1).eval(1., -1.) == 0.
    assert plus_constant(zero_kernel()).eval(0.3, -2.) == 1.
    points = PointSet(torch.linspace(-1., 1., 5))
    assert torch.allclose(gram(plus_constant(k1), points).entries, gram(k1, points).entries + 1.)


def test_minus_constant():
    delta = DeltaKernel(2)
    k_minus = minus_constant(delta, 0.5)
    assert k_minus.eval(0., 0.) == 0.5
    assert k_minus.eval(0., 1.) == -0.5
    assert minus_constant(delta, 0.) is delta
    assert minus_constant(ConstantKernel(1.), 1.).eval(3., 4.) == 0.


def test_estimate_const_norm():
    assert estimate_const_norm(DeltaKernel(2), PointSet(torch.tensor([0., 1.]))) == pytest.approx(2.)
    assert estimate_const_norm(ConstantKernel(1.), PointSet(torch.linspace(0., 1., 7))) == pytest.approx(1.)
    with pytest.raises(ConstantNotRepresentableError):
        estimate_const_norm(PolynomialNoConstKernel(4), PointSet(torch.linspace(-1., 1., 9)))


def test_squared_and_label_kernels():
    assert squared(LinearKernel()).eval(2., 3.) == 36.
    delta = DeltaKernel()
    assert squared(delta).eval(1., 1.) == delta.eval(1., 1.)
    k = LinearKernel()
    assert y_weighted(k).eval([1., 2.], [1., 3.]) == k.eval(2., 3.)
    assert y_weighted(k).eval([0., 2.], [5., 3.]) == 0.
    assert y_weighted(delta).eval([2., 7.], [3., 7.]) == 6.
    assert extended(k).eval([-4., 2.], [9., 3.]) == 36.


def test_sum_kernel(generator):
    X = torch.randn(6, 2, generator=generator)
    points = PointSet(X)
    k1, k2 = LinearKernel(), squared(LinearKernel())
    assert torch.allclose(gram(kernel_sum(k1, k2), points).entries,
                          gram(k1, points).entries + gram(k2, points).entries)
    assert torch.equal(kernel_sum(k1, zero_kernel())(X), k1(X))
    # direct-sum kernel on labelled points with y = 1
    aug = torch.cat([torch.ones(6, 1), X], dim=1)
    G = LinearKernel()(X)
    assert torch.allclose(kernel_sum(extended(k1), y_weighted(k1))(aug), G**2 + G)


def test_kernel_from_config():
    kernel = kernel_from_config({"kind": "poly_no_const", "params": {"degree": 3}})
    assert isinstance(kernel, PolynomialNoConstKernel) and kernel.degree == 3
    nested = kernel_from_config('{"kind": "plus_constant", "params": {"base": {"kind": "linear"}}}')
    assert nested.eval(1., 1.) == 2.
    with pytest.raises(UsageError):
        kernel_from_config({"params": {}})


def test_point_set_csv(tmp_path):
    path = tmp_path / "points.csv"
    path.write_text("x1,x2,y\n0.5,1,2\n-1,0,3\n")
    points = PointSet.read_csv(str(path))
    assert points.n == 2 and points.dim == 2
    assert points.labels.tolist() == [2., 3.]
    assert points.augmented().points[:, 0].tolist() == [2., 3.]

    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n")
    with pytest.raises(UsageError):
        PointSet.read_csv(str(bad))


@pytest.mark.parametrize("kernel", [
    LinearKernel(), PolynomialNoConstKernel(2), PolynomialNoConstKernel(3), DeltaKernel(), ConstantKernel(2.),
    plus_constant(LinearKernel()), squared(PolynomialNoConstKernel(2)), y_weighted(LinearKernel()),
    extended(LinearKernel()), kernel_sum(extended(LinearKernel()), y_weighted(LinearKernel())),
], ids=lambda k: k.kind)
def test_gram_is_symmetric_psd(kernel, generator):
    # columns are (y, x1, x2) so the label kernels see augmented points
    for _ in range(100):
        n = int(torch.randint(1, 21, (1,), generator=generator))
        G = gram(kernel, PointSet(torch.randn(n, 3, generator=generator)))
        assert torch.equal(G.entries, G.entries.T)
        assert G.is_psd()
