# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

import math
import os

import torch

from kc_core.kernels import PointSet, PolynomialNoConstKernel
from kc_core.spectral import (circle_directions, circle_indicator_mass, circle_psi_mass, diam_lower_kplus,
                              empirical_ball_radius, min_sample_size, rademacher_bound, smallest_eig,
                              vc_uniform_bound)

from kernel_compress.cases.base.base_case import BaseCase
from kernel_compress.utils.logger import Logger


def candidate_values(coefficients, x: torch.Tensor) -> torch.Tensor:
    """ h(x) = sum_u c_u x^u for u = 1..len(coefficients). """
    h = torch.zeros_like(x)
    for u, c in enumerate(coefficients, start=1):
        h += c * x ** u
    return h


class ConstantApproxCase(BaseCase):
    """ Kernel-matrix lower bound against the achieved sup-norm error of the candidates h_d, k_d = sum_u x^u y^u. """

    def compute(self):
        c = self.cfg.case
        grid = torch.linspace(-1., 1., c.grid_size, dtype=torch.float64)
        rows = []
        for d in c.degrees:
            points = PointSet(torch.linspace(-1., 1., d + 1, dtype=torch.float64).unsqueeze(1))
            report = diam_lower_kplus(PolynomialNoConstKernel(d), points)
            # every unit-norm h has inf_c ||h - c||_inf >= (lambda / (d + 1))^(1/2)
            lower = (report.lambda_min / report.d_used) ** 0.5
            coefficients = c.candidates[d - 1]
            h = candidate_values(coefficients, grid)
            hi, lo = float(h.max()), float(h.min())
            rows.append((d, report.lambda_min, report.diam_lower, lower, (hi - lo) / 2., (hi + lo) / 2.,
                         math.sqrt(sum(v * v for v in coefficients))))
        self.tables["constant_approx"] = (["d", "lambda_min", "diam_lower", "lower_bound", "achieved_error", "best_constant",
                                   "h_norm"], rows)
        self.metrics = {
            "lower_bound": [r[3] for r in rows],
            "achieved_error": [r[4] for r in rows],
            "max_ratio": max(r[3] / r[4] for r in rows),
        }
        return all(r[3] <= r[4] + c.atol for r in rows)

    def render(self, out_dir):
        logger = Logger()
        for d, _, _, lower, achieved, _, _ in self.tables["constant_approx"][1]:
            logger.log_states({"d": d, "lower_bound": lower, "achieved_error": achieved})
        path = os.path.join(out_dir, "constant_approx.png")
        logger.plot_constant_approx(path)
        return [path]


class CircleCase(BaseCase):
    """ Fraction of uniform unit-circle samples whose convex hull holds a ball of the given radius around 0. """

    def compute(self):
        c = self.cfg.case
        directions = circle_directions(c.probes)
        radii = []
        for _ in range(c.trials):
            theta = 2. * math.pi * torch.rand(c.n, generator=self.generator, dtype=torch.float64)
            X = torch.stack([torch.cos(theta), torch.sin(theta)], dim=1)
            radii.append(empirical_ball_radius(X, [0., 0.], directions))
        hits = sum(r >= c.radius for r in radii)
        fraction = hits / c.trials
        self.tables["circle"] = (["trial", "radius"], list(enumerate(radii)))
        self.metrics = {"fraction": fraction, "mean_radius": sum(radii) / len(radii), "min_radius": min(radii)}
        return fraction >= c.min_fraction


class DeviationCase(BaseCase):
    """ Crossover sample sizes of the VC and Rademacher bounds for a centered ball on the unit circle. """

    def compute(self):
        c = self.cfg.case
        x = math.log(1. / (1. - c.p))
        vc_margin = circle_indicator_mass(-c.radius)
        rad_margin = circle_psi_mass(-c.radius, c.gamma)
        n_vc = min_sample_size(lambda n: vc_uniform_bound(c.d, n, x, j1=c.j1), vc_margin)
        n_rad = min_sample_size(lambda n: rademacher_bound(c.gamma, 1. - c.p, n, c.sup_k_root), rad_margin)
        vc_dev = n_vc / c.vc_target - 1.
        rad_dev = n_rad / c.rademacher_target - 1.
        self.tables["deviation"] = (["bound", "margin", "n", "target", "relative_deviation"],
                                    [("vc", vc_margin, n_vc, c.vc_target, vc_dev),
                                     ("rademacher", rad_margin, n_rad, c.rademacher_target, rad_dev)])
        self.metrics = {"n_vc": n_vc, "n_rademacher": n_rad, "vc_relative_deviation": vc_dev,
                        "rademacher_relative_deviation": rad_dev, "ratio": n_vc / n_rad}
        # the Rademacher crossover lands near 4000, so its check is the ratio to the VC size
        return abs(vc_dev) <= c.rel_tol and n_vc / n_rad >= c.min_ratio


class SpectralOracleCase(BaseCase):
    """ smallest_eig against torch.linalg.eigvalsh on random SPD matrices. """

    def compute(self):
        c = self.cfg.case
        rows = []
        for trial in range(c.trials):
            n = int(torch.randint(2, c.max_dim + 1, (1,), generator=self.generator))
            Q, _ = torch.linalg.qr(torch.randn(n, n, generator=self.generator, dtype=torch.float64))
            scale = 10. ** float(4. * torch.rand(1, generator=self.generator, dtype=torch.float64) - 2.)
            evals = scale * torch.linspace(1., 10., n, dtype=torch.float64)
            A = Q @ torch.diag(evals) @ Q.T
            A = 0.5 * (A + A.T)
            reference = float(torch.linalg.eigvalsh(A)[0])
            estimate = smallest_eig(A)
            rows.append((trial, n, reference, estimate, abs(estimate - reference) / abs(reference)))
        self.tables["spectral_oracle"] = (["trial", "n", "eigvalsh", "smallest_eig", "relative_error"], rows)
        worst = max(r[4] for r in rows)
        self.metrics = {"max_relative_error": worst}
        return worst <= c.rtol
