# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

from kernel_compress.cases.base.case_config import CaseCfg


class DeterminismCfg(CaseCfg):

    class case(CaseCfg.case):
        budget_s = 60.
        # cheap cases that cover every writer: tables, results and the seeded generator
        cases = ["constant_approx", "deviation", "simplex", "krr_equivalence", "measure_check"]
        repeats = 2
