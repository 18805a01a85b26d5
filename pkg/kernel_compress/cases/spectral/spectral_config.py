# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

import math

from kernel_compress.cases.base.case_config import CaseCfg

_S3 = 1. / math.sqrt(3.)


class ConstantApproxCfg(CaseCfg):

    class case(CaseCfg.case):
        budget_s = 5.
        degrees = [1, 2, 3, 4]
        grid_size = 10000
        # coefficients of x, x^2, ... of the unit-norm candidate h_d
        candidates = [[1.],
                      [0., 1.],
                      [_S3, _S3, -_S3],
                      [-0.5, 0.5, 0.5, -0.5]]
        atol = 1e-12


class CircleCfg(CaseCfg):

    class case(CaseCfg.case):
        budget_s = 30.
        trials = 500
        n = 50
        radius = 0.2
        probes = 360
        min_fraction = 0.9


class DeviationCfg(CaseCfg):

    class case(CaseCfg.case):
        budget_s = 1.
        d = 2
        j1 = 8.  # J(1) <= 8 v 3 for the unit circle
        p = 0.9
        radius = 0.2
        gamma = 1.
        sup_k_root = 0.5  # 24 b / gamma = 12 / gamma
        vc_target = 52000
        rademacher_target = 5000
        rel_tol = 0.05
        min_ratio = 10.


class SpectralOracleCfg(CaseCfg):

    class case(CaseCfg.case):
        budget_s = 60.
        trials = 50
        max_dim = 100
        rtol = 1e-8
