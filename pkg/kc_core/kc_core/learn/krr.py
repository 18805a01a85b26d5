# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
import logging
from dataclasses import dataclass
from enum import Enum

import torch

from kc_core.errors import NumericalError, UsageError
from kc_core.kernels import Kernel, PointSet, as_row, gram
from kc_core.storage import Coreset
from kc_core.utils import as_vector, pinv_general

logger = logging.getLogger(__name__)

WEIGHT_FLOOR = 1e-14
RESIDUAL_RTOL = 1e-8


class RegressionMode(str, Enum):
    Suboptimal = "sub"
    MinimalNorm = "min"


class Regularizer(str, Enum):
    InverseWeights = "weights"
    # lambda * I, not the coreset-weighted form
    Identity = "identity"


@dataclass(eq=False)
class Regressor:
    alpha: torch.Tensor
    support_points: torch.Tensor
    kernel: Kernel
    lam: float
    mode: RegressionMode
    support_indices: list
    regularizer: Regularizer = Regularizer.InverseWeights
    residual: float = 0.

    @property
    def kernel_id(self) -> str:
        return self.kernel.id

    def predict(self, X) -> torch.Tensor:
        return self.kernel(X, self.support_points) @ self.alpha

    def to_dict(self) -> dict:
        out = {"alpha": self.alpha.tolist(), "support_points": self.support_points.tolist(),
               "kernel_id": self.kernel_id, "lambda": self.lam, "mode": RegressionMode(self.mode).name}
        if self.regularizer != Regularizer.InverseWeights:
            out["regularizer"] = Regularizer(self.regularizer).value
        return out


def _cholesky_solve(A: torch.Tensor, b: torch.Tensor) -> torch.Tensor:
    L, info = torch.linalg.cholesky_ex(A)
    if int(info) != 0:
        raise NumericalError(f"Regularized kernel system is not positive definite (leading minor {int(info)})")
    return torch.cholesky_solve(b.unsqueeze(1), L).squeeze(1)


def krr_fit(kernel: Kernel, coreset: Coreset, points: PointSet, y=None, lam: float = 1e-3,
            mode=RegressionMode.Suboptimal, regularizer=Regularizer.InverseWeights) -> Regressor:
    """ Weighted Tikhonov regression on a coreset.

    `y` holds one target per source point and defaults to the labels of `points`. Duplicate
    indices are merged and atoms with weight <= 1e-14 dropped before W^-1 is formed. Suboptimal
    solves (K_l + lam W^-1) alpha = y_l; MinimalNorm applies
    (K_l + lam W^-1)^-1 (K_l W)^+ K_l W y_l.
    """
    mode, regularizer = RegressionMode(mode), Regularizer(regularizer)
    if not lam > 0.:
        raise UsageError(f"lambda must be positive, got {lam}")
    if coreset.n_source != points.n:
        raise UsageError(f"Coreset refers to {coreset.n_source} points, sample has {points.n}")
    if y is None:
        if points.labels is None:
            raise UsageError("krr_fit needs targets y or a labelled point set")
        y = points.labels
    y = as_vector(y)
    if y.shape[0] != points.n:
        raise UsageError(f"Got {y.shape[0]} targets for {points.n} points")

    reduced = coreset.compact()
    keep = [k for k in range(reduced.size) if float(reduced.weights[k]) > WEIGHT_FLOOR]
    if not keep:
        raise UsageError("No coreset atom has a positive weight")
    if len(keep) < reduced.size:
        logger.warning("krr_fit: dropped %d atoms with weight <= %g", reduced.size - len(keep), WEIGHT_FLOOR)
    idx = [reduced.indices[k] for k in keep]
    w = reduced.weights[keep]

    support = points.subset(idx)
    K_l = gram(kernel, support).entries
    y_l = y[idx]
    reg = torch.diag(1. / w) if regularizer == Regularizer.InverseWeights else torch.eye(len(idx), dtype=torch.float64)
    A = K_l + lam * reg

    K_lW = K_l * w.unsqueeze(0)
    projected = pinv_general(K_lW) @ (K_lW @ y_l)
    if mode == RegressionMode.Suboptimal:
        alpha = _cholesky_solve(A, y_l)
    else:
        alpha = _cholesky_solve(A, projected)
    if not torch.isfinite(alpha).all():
        raise NumericalError("Non-finite regression coefficients")

    # normal equation K_l W ((K_l + lam W^-1) alpha - (K_l W)^+ K_l W y) = 0
    residual = float((K_lW @ (A @ alpha - projected)).norm())
    y_norm = float(y_l.norm())
    if residual > RESIDUAL_RTOL * max(y_norm, 1e-300) * max(1., float(torch.linalg.matrix_norm(K_lW, ord=2))):
        raise NumericalError(f"Normal equation residual {residual:.3e} exceeds tolerance for ||y|| = {y_norm:.3e}")
    logger.debug("krr_fit: l=%d mode=%s residual=%.3e", len(idx), mode.name, residual)
    return Regressor(alpha, support.points, kernel, float(lam), mode, idx, regularizer, residual)


def krr_predict(reg: Regressor, x) -> float:
    """ sum_i alpha_i k(x_i, x) at a single point x. """
    return float(reg.predict(as_row(x))[0])
