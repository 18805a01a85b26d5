# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

from .base import Kernel, as_row
from .builtin import PolynomialNoConstKernel, LinearKernel, DeltaKernel, ConstantKernel, FeatureMapKernel
from .calculus import (PlusConstantKernel, MinusConstantKernel, SquaredKernel, YWeightedKernel, ExtendedKernel, SumKernel,
                       plus_constant, minus_constant, squared, y_weighted, extended, kernel_sum, zero_kernel, label_product)
from .point_set import PointSet
from .gram import GramMatrix, gram, gram_rows, estimate_const_norm, as_matrix
from .factory import kernel_from_config
