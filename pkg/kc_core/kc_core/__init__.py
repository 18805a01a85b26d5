# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

__version__ = '0.3.0'
