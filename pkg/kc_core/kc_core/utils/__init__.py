# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

from .utils import as_points, as_vector, tensor_digest, psd_tolerance, min_eigenvalue, pinv, pinv_general, numerical_rank, pivoted_cholesky, PINV_RTOL, RANK_RTOL
