# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

from kernel_compress import KERNEL_COMPRESS_ROOT_DIR, KERNEL_COMPRESS_CASES_DIR
from .base.base_case import BaseCase
from .spectral.spectral_config import ConstantApproxCfg, CircleCfg, DeviationCfg, SpectralOracleCfg
from .spectral.spectral_cases import ConstantApproxCase, CircleCase, DeviationCase, SpectralOracleCase
from .compress.compress_config import HerdingIdentityCfg, FrankWolfeRateCfg, SimplexCfg
from .compress.compress_cases import HerdingIdentityCase, FrankWolfeRateCase, SimplexCase
from .learn.learn_config import KrrEquivalenceCfg, MmdCfg as MmdCaseCfg
from .learn.learn_cases import KrrEquivalenceCase, MmdCase
from .counterexample.counterexample_config import CounterexampleCaseCfg, MeasureCheckCfg
from .counterexample.counterexample_cases import CounterexampleCase, MeasureCheckCase
from .repro.determinism_config import DeterminismCfg
from .repro.determinism_case import DeterminismCase

from kernel_compress.utils.case_registry import case_registry

case_registry.register("constant_approx", ConstantApproxCase, ConstantApproxCfg())
case_registry.register("circle", CircleCase, CircleCfg())
case_registry.register("deviation", DeviationCase, DeviationCfg())
case_registry.register("herding_identity", HerdingIdentityCase, HerdingIdentityCfg())
case_registry.register("frank_wolfe_rate", FrankWolfeRateCase, FrankWolfeRateCfg(), slow=True)
case_registry.register("simplex", SimplexCase, SimplexCfg())
case_registry.register("krr_equivalence", KrrEquivalenceCase, KrrEquivalenceCfg())
case_registry.register("mmd", MmdCase, MmdCaseCfg())
case_registry.register("counterexample", CounterexampleCase, CounterexampleCaseCfg(), slow=True)
case_registry.register("measure_check", MeasureCheckCase, MeasureCheckCfg())
case_registry.register("spectral_oracle", SpectralOracleCase, SpectralOracleCfg())
case_registry.register("determinism", DeterminismCase, DeterminismCfg())
