# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

from .base_config import BaseConfig
from .case_config import CaseCfg
from .compress_config import CompressCfg, KrrCfg, MmdCfg, DiagnoseCfg, CounterexampleCfg
from .base_case import BaseCase
