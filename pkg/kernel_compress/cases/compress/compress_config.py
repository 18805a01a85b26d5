# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

from kernel_compress.cases.base.case_config import CaseCfg


class HerdingIdentityCfg(CaseCfg):

    class case(CaseCfg.case):
        budget_s = 60.
        trials = 20
        min_n = 10
        max_n = 200
        min_T = 10
        max_T = 500
        rtol = 1e-9
        kernels = [{"kind": "linear", "params": {}},
                   {"kind": "poly_no_const", "params": {"degree": 3}},
                   {"kind": "delta", "params": {}},
                   {"kind": "feature_map", "params": {"basis": "monomial", "degrees": [1, 2], "input_dim": 2}}]


class FrankWolfeRateCfg(CaseCfg):

    class case(CaseCfg.case):
        budget_s = 60.
        n = 2000
        t_early = 64
        t_late = 256
        max_ratio = 1.25
        floor_rtol = 1e-12  # squared errors below floor_rtol * max k(x, x) count as converged
        instances = ["cube", "circle"]


class SimplexCfg(CaseCfg):

    class case(CaseCfg.case):
        budget_s = 5.
        max_d = 10
        points_per_vertex = 20
        max_error_sq = 1e-20
