# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

import logging
import math

import torch

from kc_core.algorithms import KernelHerding, frank_wolfe, make_oracle
from kc_core.kernels import DeltaKernel, FeatureMapKernel, LinearKernel, PointSet, kernel_from_config

from kernel_compress.cases.base.base_case import BaseCase

logger = logging.getLogger(__name__)


def _instance_points(kernel_cfg, n, generator):
    kind = kernel_cfg["kind"]
    if kind == "delta":
        return torch.randint(0, 5, (n, 1), generator=generator).to(torch.float64)
    if kind == "poly_no_const":
        return 2. * torch.rand(n, 1, generator=generator, dtype=torch.float64) - 1.
    if kind == "feature_map":
        dim = int(kernel_cfg["params"].get("input_dim", 1))
        return 2. * torch.rand(n, dim, generator=generator, dtype=torch.float64) - 1.
    return torch.randn(n, 2, generator=generator, dtype=torch.float64)


class HerdingIdentityCase(BaseCase):
    """ ||w_t|| = t ||m_n - m_hat_t|| at every herding step on random instances. """

    def compute(self):
        c = self.cfg.case
        rows = []
        for trial in range(c.trials):
            kernel_cfg = c.kernels[trial % len(c.kernels)]
            n = int(torch.randint(c.min_n, c.max_n + 1, (1,), generator=self.generator))
            T = int(torch.randint(c.min_T, c.max_T + 1, (1,), generator=self.generator))
            points = PointSet(_instance_points(kernel_cfg, n, self.generator))
            alg = KernelHerding(make_oracle(kernel_from_config(kernel_cfg), points), check_identity=False)
            scale = float(alg.oracle.diag.abs().max()) + abs(alg.oracle.mean_norm_sq)
            worst = 0.
            for t in range(1, T + 1):
                record = alg.step()
                gap = abs(alg.w_norm_sq - t**2 * record.error_sq)
                worst = max(worst, gap / max(t**2 * scale, alg.w_norm_sq))
            rows.append((trial, kernel_cfg["kind"], n, T, worst))
        self.tables["herding_identity"] = (["trial", "kernel", "n", "T", "max_relative_gap"], rows)
        worst = max(r[4] for r in rows)
        self.metrics = {"max_relative_gap": worst, "instances": len(rows)}
        return worst <= c.rtol


class FrankWolfeRateCase(BaseCase):
    """ t error(t) at t_late stays within max_ratio of its value at t_early on densely sampled instances. """

    def _instance(self, name, n):
        if name == "circle":
            theta = 2. * math.pi * torch.rand(n, generator=self.generator, dtype=torch.float64)
            return LinearKernel(), PointSet(torch.stack([torch.cos(theta), torch.sin(theta)], dim=1))
        points = 2. * torch.rand(n, 2, generator=self.generator, dtype=torch.float64) - 1.
        return FeatureMapKernel.from_basis("monomial", [1, 2], input_dim=2), PointSet(points, domain_box=(-1., 1.))

    def compute(self):
        c = self.cfg.case
        rows = []
        passed = True
        for name in c.instances:
            kernel, points = self._instance(name, c.n)
            _, trace = frank_wolfe(kernel, points, c.t_late)
            if len(trace) < c.t_late:
                logger.error("frank_wolfe_rate: %s stopped after %d of %d steps", name, len(trace), c.t_late)
                passed = False
                rows.append((name, len(trace), None, None, None, False, False))
                continue
            floor = c.floor_rtol * float(kernel.diag(points.points).abs().max())
            err_early = max(float(trace.error_sq[c.t_early - 1]), 0.)
            err_late = max(float(trace.error_sq[c.t_late - 1]), 0.)
            early = c.t_early * math.sqrt(err_early)
            late = c.t_late * math.sqrt(err_late)
            # both errors at round-off level leave the ratio undefined
            at_floor = err_early <= floor and err_late <= floor
            if at_floor:
                ratio, ok = None, True
            else:
                ratio = late / early if early > 0. else math.inf
                ok = ratio <= c.max_ratio
            passed = passed and ok
            rows.append((name, len(trace), early, late, ratio, at_floor, ok))
        self.tables["frank_wolfe_rate"] = (["instance", "steps", "t_error_early", "t_error_late", "ratio", "at_floor", "ok"],
                                           rows)
        self.metrics = {"ratio": {r[0]: r[4] for r in rows}, "steps": {r[0]: r[1] for r in rows}}
        return passed


class SimplexCase(BaseCase):
    """ Delta-kernel d-simplices with equal mass per vertex: Frank-Wolfe reaches the barycenter in d steps. """

    def compute(self):
        c = self.cfg.case
        rows = []
        passed = True
        for d in range(1, c.max_d + 1):
            n = c.points_per_vertex * d
            labels = torch.arange(d).repeat(c.points_per_vertex)[torch.randperm(n, generator=self.generator)]
            points = PointSet(labels.to(torch.float64).unsqueeze(1))
            coreset, trace = frank_wolfe(DeltaKernel(d), points, d)
            # explicit feature space: coordinate l is the mass on label l
            target = torch.bincount(labels, minlength=d).to(torch.float64) / n
            approx = torch.zeros(d, dtype=torch.float64)
            approx.index_add_(0, labels[torch.tensor(coreset.indices, dtype=torch.long)], coreset.weights)
            err = float(((approx - target) ** 2).sum())
            ok = err <= c.max_error_sq and len(trace) == d
            passed = passed and ok
            rows.append((d, n, len(trace), err, ok))
        self.tables["simplex"] = (["d", "n", "steps", "error_sq", "ok"], rows)
        self.metrics = {"max_error_sq": max(r[3] for r in rows)}
        return passed
