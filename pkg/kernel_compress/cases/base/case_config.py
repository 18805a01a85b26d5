# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

from .base_config import BaseConfig


class CaseCfg(BaseConfig):
    seed = 0

    class case:
        budget_s = None  # wall time budget, reported only
        trials = 1
