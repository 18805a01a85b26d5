# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

import math

import torch

from kc_core.algorithms import error_sq, frank_wolfe
from kc_core.kernels import LinearKernel, PointSet, gram, kernel_sum, squared
from kc_core.learn import RegressionMode, hierarchical_compress, krr_fit, mmd_sq, mmd_sq_compressed
from kc_core.storage import Coreset

from kernel_compress.cases.base.base_case import BaseCase


def _relative(a: torch.Tensor, b: torch.Tensor) -> float:
    return float((a - b).norm() / max(float(b.norm()), 1e-300))


class KrrEquivalenceCase(BaseCase):
    """ Uniform full-sample coreset ridge against dense ridge with n lambda, and Suboptimal against MinimalNorm at full rank. """

    def _randint(self, lo, hi):
        return int(torch.randint(lo, hi + 1, (1,), generator=self.generator))

    def compute(self):
        c = self.cfg.case
        kernel = LinearKernel()
        rows = []
        for trial in range(c.trials):
            n = self._randint(c.min_n, c.max_n)
            lam = 10. ** float(-3. + 2. * torch.rand(1, generator=self.generator, dtype=torch.float64))
            X = torch.randn(n, c.dim, generator=self.generator, dtype=torch.float64)
            y = torch.randn(n, generator=self.generator, dtype=torch.float64)
            points = PointSet(X, y)
            reg = krr_fit(kernel, Coreset.uniform(range(n), n), points, lam=lam)
            K = gram(kernel, points).entries
            dense = torch.linalg.solve(K + n * lam * torch.eye(n, dtype=torch.float64), y)
            dense_gap = _relative(reg.alpha, dense)

            # m points in R^(2m + 2) give a well conditioned full-rank K_l W
            m = self._randint(c.full_rank_min, c.full_rank_max)
            Xf = torch.randn(m, 2 * m + 2, generator=self.generator, dtype=torch.float64)
            yf = torch.randn(m, generator=self.generator, dtype=torch.float64)
            w = torch.rand(m, generator=self.generator, dtype=torch.float64) + 0.1
            full = PointSet(Xf, yf)
            coreset = Coreset(range(m), w / w.sum(), m)
            sub = krr_fit(kernel, coreset, full, lam=lam, mode=RegressionMode.Suboptimal)
            mini = krr_fit(kernel, coreset, full, lam=lam, mode=RegressionMode.MinimalNorm)
            modes_gap = _relative(sub.alpha, mini.alpha)
            rows.append((trial, n, lam, dense_gap, m, modes_gap))
        self.tables["krr_equivalence"] = (["trial", "n", "lambda", "dense_gap", "full_rank_l", "modes_gap"], rows)
        dense_worst = max(r[3] for r in rows)
        modes_worst = max(r[5] for r in rows)
        self.metrics = {"max_dense_gap": dense_worst, "max_modes_gap": modes_worst}
        return dense_worst <= c.dense_rtol and modes_worst <= c.modes_rtol


class MmdCase(BaseCase):
    """ Exact self-MMD, the compressed triangle budget and the hierarchical stage budgets on random instances. """

    def compute(self):
        c = self.cfg.case
        kernel = kernel_sum(LinearKernel(), squared(LinearKernel()))
        rows = []
        passed = True
        for trial in range(c.trials):
            n_a, n_b = (int(v) for v in torch.randint(c.min_n, c.max_n + 1, (2,), generator=self.generator))
            shift = torch.rand(2, generator=self.generator, dtype=torch.float64)
            a = PointSet(torch.randn(n_a, 2, generator=self.generator, dtype=torch.float64))
            b = PointSet(torch.randn(n_b, 2, generator=self.generator, dtype=torch.float64) + shift)

            self_mmd = mmd_sq(kernel, a, a).mmd_sq
            exact = mmd_sq(kernel, a, b).mmd_sq
            coreset_a, _ = frank_wolfe(kernel, a, c.T)
            coreset_b, _ = frank_wolfe(kernel, b, c.T)
            compressed = mmd_sq_compressed(kernel, coreset_a, a, coreset_b, b)
            gap = abs(math.sqrt(compressed.mmd_sq) - math.sqrt(exact))

            hier = hierarchical_compress(kernel, a)
            stages = hier.meta["stage_errors"]
            hier_error = math.sqrt(error_sq(kernel, hier, a))
            stage_sum = stages["batches"] + stages["recompress"]

            ok = (self_mmd <= c.self_atol and gap <= compressed.error_budget + c.budget_atol
                  and hier_error <= stage_sum + c.budget_atol)
            passed = passed and ok
            rows.append((trial, n_a, n_b, self_mmd, exact, compressed.mmd_sq, gap, compressed.error_budget,
                         hier_error, stage_sum, ok))
        self.tables["mmd"] = (["trial", "n_a", "n_b", "self_mmd_sq", "exact_mmd_sq", "compressed_mmd_sq", "gap",
                               "error_budget", "hierarchical_error", "stage_budget", "ok"], rows)
        self.metrics = {"max_self_mmd_sq": max(r[3] for r in rows),
                        "max_budget_use": max(r[6] / max(r[7], 1e-300) for r in rows),
                        "max_stage_use": max(r[8] / max(r[9], 1e-300) for r in rows)}
        return passed
