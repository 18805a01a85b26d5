# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
import logging
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Optional

import torch

from kc_core.errors import DegenerateKernelError, OutOfRegimeError, PreconditionError, RankDeficientError
from kc_core.kernels import Kernel, PointSet, as_matrix, gram, plus_constant
from kc_core.utils import RANK_RTOL, pivoted_cholesky

from .eig import extreme_eigs

logger = logging.getLogger(__name__)


class BoundVariant(str, Enum):
    KPlus = "KPlus"
    KMinus = "KMinus"
    MercerSupplied = "MercerSupplied"
    MercerEstimated = "MercerEstimated"
    KFunctional = "KFunctional"


@dataclass
class SpectralReport:
    lambda_min: float
    d_used: int
    diam_lower: float
    bound_variant: BoundVariant
    notes: str = ""

    @property
    def estimated(self) -> bool:
        return self.bound_variant == BoundVariant.MercerEstimated

    def to_dict(self) -> dict:
        out = asdict(self)
        out["bound_variant"] = self.bound_variant.value
        out["estimated"] = self.estimated
        return out


def _full_rank_lambda(K: torch.Tensor, what: str) -> float:
    lam_max, lam_min = extreme_eigs(K)
    if lam_max <= 0. or lam_min <= RANK_RTOL * lam_max:
        raise RankDeficientError(
            f"{what} is numerically rank deficient (smallest eigenvalue {lam_min:.3e}, largest {lam_max:.3e}); "
            "re-select points with linearly independent kernel sections, e.g. with select_points")
    return lam_min


def sup_ratio_bound(gram_matrix) -> float:
    """ (lambda_d / d)^(1/2): every h in the span of the d kernel sections has ||h||_inf >= this times ||h||. """
    K = as_matrix(gram_matrix)
    lam = _full_rank_lambda(K, "Gram matrix")
    return (lam / K.shape[0]) ** 0.5


def select_points(kernel: Kernel, grid: PointSet, count: int) -> PointSet:
    """ Picks `count` grid points with linearly independent sections by pivoted Cholesky on the grid Gram matrix. """
    K = gram(kernel, grid).entries
    pivots, _ = pivoted_cholesky(K, count, eps=RANK_RTOL)
    if len(pivots) < count:
        raise RankDeficientError(f"Only {len(pivots)} of the requested {count} points have independent sections on this grid")
    return grid.subset(sorted(pivots))


def diam_lower_kplus(kernel: Kernel, points: PointSet) -> SpectralReport:
    """ Lower bound (1/2) (lambda_{d+1} / (d+1))^(1/2) on inf_{||h|| = 1} diam_h(C) when 1 is not in H.

    `points` holds d + 1 points; lambda_{d+1} is the smallest eigenvalue of K+ on them.
    """
    m = points.n
    K = gram(plus_constant(kernel), points).entries
    lam = _full_rank_lambda(K, "K+")
    notes = f"K+ on {m} points"
    if kernel.dim_rkhs is not None and kernel.dim_rkhs + 1 != m:
        notes += f"; advisory dim_rkhs={kernel.dim_rkhs} expects {kernel.dim_rkhs + 1} points"
    return SpectralReport(lam, m, 0.5 * (lam / m) ** 0.5, BoundVariant.KPlus, notes)


def diam_lower_kminus(kernel: Kernel, points: PointSet, c_sq: float, dim_rkhs: Optional[int] = None) -> SpectralReport:
    """ Lower bound (1/2) (lambda_d / d)^(1/2) on inf_{||h||_- = 1} diam_h(C) when 1 is in H and d >= 2. """
    if c_sq <= 0.:
        raise PreconditionError(f"1 in H requires c_sq = 1/||1||^2 > 0, got {c_sq}")
    d = dim_rkhs if dim_rkhs is not None else kernel.dim_rkhs
    if d is None:
        d = points.n
    if d < 2:
        raise PreconditionError(f"The K- bound requires d >= 2, got d={d}")
    if points.n < d:
        raise RankDeficientError(f"{points.n} points cannot give a full-rank {d} x {d} Gram matrix")
    if points.n > d:
        raise RankDeficientError(f"{points.n} points in a {d}-dimensional RKHS give a singular Gram matrix; pass exactly d points")
    K = gram(kernel, points).entries
    lam = _full_rank_lambda(K, "K")
    return SpectralReport(lam, d, 0.5 * (lam / d) ** 0.5, BoundVariant.KMinus, f"c_sq={c_sq:.12g}")


def diam_lower_mercer(lambda_tilde: float, contains_const: bool, d_used: int = 1, estimated: bool = False) -> SpectralReport:
    """ Lower bound lambda~^(1/2) / 2 from the lowest Mercer eigenvalue (of k+ when 1 is not in H, of k otherwise). """
    if lambda_tilde <= 0.:
        raise PreconditionError(f"lambda_tilde must be > 0, got {lambda_tilde}")
    if lambda_tilde > 4.:
        raise OutOfRegimeError(f"The Mercer bound needs lambda_tilde <= 4, got {lambda_tilde}")
    variant = BoundVariant.MercerEstimated if estimated else BoundVariant.MercerSupplied
    notes = "H^- directions, Mercer eigenvalue of k" if contains_const else "Mercer eigenvalue of k+"
    return SpectralReport(float(lambda_tilde), d_used, lambda_tilde ** 0.5 / 2., variant, notes)


def diam_lower_kfunctional(kernel: Kernel, points: PointSet, kf_value: float, contains_const: bool = False) -> SpectralReport:
    """ Lower bound (1/4) (lambda / m)^(1/2) K(1, t) for a K-functional value taken at a small t.

    The bound holds in the limit t -> 0; a value at finite t is reported as such, not as the limit.
    """
    if not 0. <= kf_value <= 1.:
        raise PreconditionError(f"K(1, t) lies in [0, 1], got {kf_value}")
    m = points.n
    K = gram(kernel, points).entries
    lam = _full_rank_lambda(K, "K")
    if lam > 4. * m:
        raise OutOfRegimeError(f"The K-functional bound needs lambda <= 4 m, got lambda={lam:.6g}, m={m}")
    space = "H^-" if contains_const else "H"
    return SpectralReport(lam, m, 0.25 * (lam / m) ** 0.5 * kf_value, BoundVariant.KFunctional,
                          f"{space}; K(1,t)={kf_value:.12g} at finite t, not the limit")


def mercer_estimate(kernel: Kernel, grid: PointSet) -> float:
    """ Smallest eigenvalue of K/m above the numerical-rank threshold; a quadrature surrogate for the lowest Mercer eigenvalue. """
    K = gram(kernel, grid).entries / grid.n
    evals = torch.linalg.eigvalsh(K)
    top = float(evals.max())
    keep = evals[evals > RANK_RTOL * top] if top > 0 else evals[:0]
    if keep.numel() == 0:
        raise DegenerateKernelError("All eigenvalues of K/m are below the numerical-rank threshold")
    value = float(keep.min())
    logger.info("mercer_estimate: %d of %d eigenvalues above threshold, smallest %.6g", keep.numel(), grid.n, value)
    return value
