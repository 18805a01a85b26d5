# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

from kernel_compress.cases.base.case_config import CaseCfg


class CounterexampleCaseCfg(CaseCfg):

    class case(CaseCfg.case):
        budget_s = 120.
        T = 20000
        n_max = 40
        scale = 64
        n_count_2 = 4
        profile = [5, 10, 20]


class MeasureCheckCfg(CaseCfg):

    class case(CaseCfg.case):
        budget_s = 30.
        n_max = 20
