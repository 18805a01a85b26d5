# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

from .krr import Regressor, RegressionMode, Regularizer, krr_fit, krr_predict
from .mmd import MMDResult, MMDMode, mmd_sq, mmd_sq_compressed, hierarchical_compress, weighted_mmd_sq
from .simultaneous import simultaneous_kernel, simultaneous_coreset, simultaneous_coreset_with_trace
