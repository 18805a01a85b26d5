# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

import math

import pytest
import torch

from kc_core.errors import OutOfRegimeError, PreconditionError, RankDeficientError
from kc_core.kernels import (ConstantKernel, DeltaKernel, FeatureMapKernel, LinearKernel, PointSet, PolynomialNoConstKernel,
                             plus_constant, zero_kernel)
from kc_core.spectral import balls
from kc_core.spectral import (BoundVariant, ball_radius, circle_directions, circle_indicator_mass, counter_mass,
                              diam_lower_kminus, diam_lower_kplus, diam_lower_mercer, direct_sum_diam_lower,
                              empirical_ball_radius, k_functional, k_functional_curve, mercer_estimate, min_sample_size,
                              rademacher_bound, sample_threshold, smallest_eig, sup_ratio_bound, vc_uniform_bound)


def test_smallest_eig_examples():
    assert smallest_eig(torch.eye(3)) == pytest.approx(1.)
    assert smallest_eig(torch.diag(torch.tensor([1., 0.25]))) == pytest.approx(0.25, rel=1e-8)


def test_smallest_eig_matches_eigvalsh(generator):
    for n in (5, 20, 60):
        Q, _ = torch.linalg.qr(torch.randn(n, n, generator=generator))
        A = Q @ torch.diag(torch.linspace(1., 10., n)) @ Q.T
        A = 0.5 * (A + A.T)
        assert smallest_eig(A) == pytest.approx(float(torch.linalg.eigvalsh(A)[0]), rel=1e-8)


def test_sup_ratio_bound():
    assert sup_ratio_bound(torch.eye(4)) == pytest.approx(0.5)
    assert sup_ratio_bound(torch.eye(1)) == pytest.approx(1.)
    assert sup_ratio_bound(torch.diag(torch.tensor([1., 0.25]))) == pytest.approx(math.sqrt(0.125))
    with pytest.raises(RankDeficientError):
        sup_ratio_bound(torch.ones(2, 2))


def test_kplus_linear_kernel():
    report = diam_lower_kplus(PolynomialNoConstKernel(1), PointSet(torch.tensor([-1., 1.])))
    assert report.lambda_min == pytest.approx(2.)
    assert report.diam_lower == pytest.approx(0.5)
    assert report.bound_variant == BoundVariant.KPlus
    # h(x) = x has diameter 2 over [-1, 1]; the bound must not exceed it
    assert report.diam_lower <= 2.


def test_kplus_below_brute_force(generator):
    kernel = PolynomialNoConstKernel(2)
    report = diam_lower_kplus(kernel, PointSet(torch.linspace(-1., 1., 3)))
    # h = a x + b x^2 with ||h||^2 = a^2 + b^2 = 1 for the feature map (x, x^2)
    grid = torch.linspace(-1., 1., 1001)
    theta = 2. * math.pi * torch.rand(10000, generator=generator)
    values = torch.cos(theta)[:, None] * grid[None, :] + torch.sin(theta)[:, None] * grid[None, :] ** 2
    brute = float((values.max(dim=1).values - values.min(dim=1).values).min())
    assert report.diam_lower <= brute


def test_kplus_zero_kernel_rejected():
    with pytest.raises(RankDeficientError):
        diam_lower_kplus(zero_kernel(), PointSet(torch.tensor([0., 1.])))


def test_kminus_delta_kernel():
    report = diam_lower_kminus(DeltaKernel(2), PointSet(torch.tensor([0., 1.])), 0.5)
    assert report.lambda_min == pytest.approx(1.)
    assert report.diam_lower == pytest.approx(0.5 * math.sqrt(0.5))
    assert report.diam_lower <= math.sqrt(2.)


def test_kminus_preconditions():
    with pytest.raises(PreconditionError):
        diam_lower_kminus(ConstantKernel(1.), PointSet(torch.tensor([0.])), 1.)
    with pytest.raises(RankDeficientError):
        diam_lower_kminus(DeltaKernel(), PointSet(torch.tensor([0.])), 1., dim_rkhs=2)


def test_mercer_bound():
    assert diam_lower_mercer(4., False).diam_lower == pytest.approx(1.)
    report = diam_lower_mercer(0.01, True, estimated=True)
    assert report.diam_lower == pytest.approx(0.05)
    assert report.to_dict()["estimated"] is True
    with pytest.raises(OutOfRegimeError):
        diam_lower_mercer(5., False)


def quadratic_min_diameter(generator, directions=10000):
    """ min over unit (a, b) of the diameter of a x + b x^2 on a grid of [-1, 1]. """
    grid = torch.linspace(-1., 1., 1001)
    theta = 2. * math.pi * torch.rand(directions, generator=generator)
    values = torch.cos(theta)[:, None] * grid[None, :] + torch.sin(theta)[:, None] * grid[None, :] ** 2
    return float((values.max(dim=1).values - values.min(dim=1).values).min())


def test_kminus_below_brute_force_features(generator):
    # features (1, x, x^2): ||1|| = 1 and the unit sphere of H^- is a x + b x^2 with a^2 + b^2 = 1
    kernel = FeatureMapKernel.from_basis("monomial", degrees=(0, 1, 2))
    report = diam_lower_kminus(kernel, PointSet(torch.linspace(-1., 1., 3)), 1.)
    assert 0. < report.diam_lower <= quadratic_min_diameter(generator)


def test_kminus_below_brute_force_delta(generator):
    d = 4
    report = diam_lower_kminus(DeltaKernel(d), PointSet(torch.arange(d, dtype=torch.float64)), 1. / d)
    # H^- is the mean-zero vectors of R^d with the euclidean norm
    h = torch.randn(10000, d, generator=generator)
    h = h - h.mean(dim=1, keepdim=True)
    h = h / h.norm(dim=1, keepdim=True)
    brute = float((h.max(dim=1).values - h.min(dim=1).values).min())
    assert 0. < report.diam_lower <= brute


def test_mercer_below_brute_force(generator):
    kernel = PolynomialNoConstKernel(2)
    estimate = mercer_estimate(plus_constant(kernel), PointSet(torch.linspace(-1., 1., 201)))
    report = diam_lower_mercer(estimate, False, estimated=True)
    assert 0. < report.diam_lower <= quadratic_min_diameter(generator)


def test_k_functional_constant_one():
    grid = PointSet(torch.linspace(-1., 1., 41))
    result = k_functional(LinearKernel(), grid, 1., basis_size=2)
    assert 1. - 1e-3 <= result.value <= 1. + 1e-12


def test_k_functional_curve_monotone():
    grid = PointSet(torch.linspace(-1., 1., 41))
    values = [r.value for r in k_functional_curve(PolynomialNoConstKernel(2), grid, [0.05, 0.2, 1.], basis_size=2,
                                                 stall_rtol=1.)]
    assert all(v <= 1. + 1e-12 for v in values)
    assert values == sorted(values)


def test_ball_formulas():
    assert counter_mass(1., 1., 1., 1) == pytest.approx(0.5)
    assert counter_mass(1., 1., 2., 1) == pytest.approx(0.5 * counter_mass(1., 1., 1., 1))
    assert ball_radius(2., 1., 1., 1) == pytest.approx(0.5)
    assert ball_radius(0., 1., 1., 1) == 0.
    assert ball_radius(1., 2., 1., 1) >= ball_radius(1., 1., 1., 1)


def test_sample_threshold():
    assert sample_threshold(0.5, 0.1, 1., 1., 1, 1.) == 2412330
    assert sample_threshold(1., 0.1, 1., 1., 1, 1.) < sample_threshold(0.5, 0.1, 1., 1., 1, 1.)


@pytest.mark.parametrize("terms, expected", [((4., 2.5), 4), ((4.2, 1.), 5), ((0.25, 0.5), 1)])
def test_sample_threshold_is_ceiling(monkeypatch, terms, expected):
    monkeypatch.setattr(balls, "threshold_terms", lambda *args: terms)
    assert sample_threshold(0.5, 0.1, 1., 1., 1, 1.) == expected


def test_direct_sum_diam_lower():
    assert direct_sum_diam_lower(0., 1., 1., 1., 2., 5.) == pytest.approx(2.)
    assert direct_sum_diam_lower(0., 1., 0., 0., 2., 5.) == 0.
    assert direct_sum_diam_lower(1., 0., 1., 1., 2., 5.) == pytest.approx(5.)
    with pytest.raises(PreconditionError):
        direct_sum_diam_lower(1., 1., 1., 1., 2., 5.)


def test_deviation_bounds():
    assert vc_uniform_bound(2, 100, 0., j1=8.) == pytest.approx(12. * 8. / 10.)
    assert vc_uniform_bound(2, 400, 1.) < vc_uniform_bound(2, 100, 1.)
    assert rademacher_bound(1., 1., 100, 1.) == pytest.approx(2.4)
    base = rademacher_bound(1., 1., 100, 1.)
    assert rademacher_bound(2., 1., 100, 1.) == pytest.approx(base / 2.)
    assert circle_indicator_mass(0.) == pytest.approx(0.5)


def test_min_sample_size():
    assert min_sample_size(lambda n: 1. / n, 0.01) == 101
    assert min_sample_size(lambda n: 0., 1.) == 1


def test_empirical_ball_radius():
    square = torch.tensor([[1., 1.], [1., -1.], [-1., 1.], [-1., -1.]])
    assert empirical_ball_radius(square, [0., 0.], circle_directions(8)) == pytest.approx(1.)
    assert empirical_ball_radius(square, [2., 0.], circle_directions(8)) < 0.
