# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

from .coreset import Coreset, SIMPLEX_TOL
from .compression_trace import CompressionTrace
