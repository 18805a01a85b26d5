# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
import logging
from dataclasses import dataclass

import torch

from kc_core.errors import ConstantNotRepresentableError, EvaluationError, UsageError
from kc_core.utils import min_eigenvalue, pinv, psd_tolerance

from .base import Kernel
from .point_set import PointSet

logger = logging.getLogger(__name__)

CONST_RESIDUAL_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class GramMatrix:
    entries: torch.Tensor
    kernel_id: str = ""
    points_id: str = ""

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def min_eig(self) -> float:
        return min_eigenvalue(self.entries)

    def is_psd(self) -> bool:
        return self.min_eig() >= -psd_tolerance(self.entries)


def as_matrix(gram) -> torch.Tensor:
    if isinstance(gram, GramMatrix):
        return gram.entries
    K = torch.as_tensor(gram, dtype=torch.float64)
    if K.dim() != 2 or K.shape[0] != K.shape[1]:
        raise UsageError(f"Expected a square matrix, got shape {tuple(K.shape)}")
    return K


def _check_finite(K: torch.Tensor, row_offset: int = 0):
    bad = ~torch.isfinite(K)
    if bad.any():
        i, j = (int(v) for v in bad.nonzero()[0])
        raise EvaluationError(i + row_offset, j, float(K[i, j]))


def gram(kernel: Kernel, points: PointSet) -> GramMatrix:
    """ Kernel matrix K_ij = k(x_i, x_j). The upper triangle is mirrored, so K is exactly symmetric. """
    K = kernel(points.points, points.points)
    _check_finite(K)
    K = torch.triu(K) + torch.triu(K, diagonal=1).T
    return GramMatrix(K, kernel.id, points.id)


def gram_rows(kernel: Kernel, points: PointSet, rows) -> torch.Tensor:
    """ Rows k(x_r, x_j) for the given row indices, without forming the full matrix. """
    idx = torch.as_tensor(rows, dtype=torch.long).reshape(-1)
    R = kernel(points.points[idx], points.points)
    _check_finite(R)
    return R


def estimate_const_norm(kernel: Kernel, grid: PointSet) -> float:
    """ Squared RKHS norm of the constant function, 1^T K^+ 1 over the grid.

    Exact when 1 lies in the span of the k(x_i, .). Raises ConstantNotRepresentableError when the
    minimal-norm interpolant misses the constant by more than CONST_RESIDUAL_TOL.
    """
    K = gram(kernel, grid).entries
    Kp = pinv(K)
    ones = torch.ones(K.shape[0], dtype=K.dtype)
    coef = Kp @ ones
    residual = float((K @ coef - ones).abs().max())
    if residual > CONST_RESIDUAL_TOL:
        raise ConstantNotRepresentableError(
            f"The constant function is not in the span of the kernel sections on this grid (residual {residual:.3e})")
    value = float(ones @ coef)
    logger.debug("estimate_const_norm: ||1||^2 = %.12g on %d points", value, K.shape[0])
    return value
