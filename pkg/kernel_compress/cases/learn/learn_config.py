# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

from kernel_compress.cases.base.case_config import CaseCfg


class KrrEquivalenceCfg(CaseCfg):

    class case(CaseCfg.case):
        budget_s = 10.
        trials = 20
        min_n = 10
        max_n = 60
        dim = 3
        dense_rtol = 1e-9
        full_rank_min = 3
        full_rank_max = 7
        modes_rtol = 1e-8


class MmdCfg(CaseCfg):

    class case(CaseCfg.case):
        budget_s = 30.
        trials = 50
        min_n = 30
        max_n = 120
        T = 8
        self_atol = 1e-10
        budget_atol = 1e-10
