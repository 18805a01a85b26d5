# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
import logging
import math
from dataclasses import dataclass

import torch

from kc_core.errors import RefusalError, UsageError
from kc_core.kernels import Kernel, PointSet
from kc_core.storage import Coreset

logger = logging.getLogger(__name__)

MAX_CENTERS = 10**8


def net_size(eps: float, d: int) -> int:
    """ ceil(d^(d/2) / eps^d), the number of centers of an equispaced eps-net of the unit cube. """
    log_n = 0.5 * d * math.log(d) - d * math.log(eps)
    if log_n > math.log(MAX_CENTERS) + 1.:
        return MAX_CENTERS + 1
    return math.ceil(math.exp(log_n) * (1. - 1e-15))


@dataclass(eq=False)
class EpsNet:
    centers: torch.Tensor
    weights: torch.Tensor
    cells: torch.Tensor
    representatives: list
    n_formula: int
    eps: float

    @property
    def size(self) -> int:
        return self.centers.shape[0]

    def coreset(self, n_source: int, **kwargs) -> Coreset:
        """ Occupied cells as sample indices, each cell's mass on the point nearest its center. """
        return Coreset(self.representatives, self.weights, n_source, **kwargs)


def build_epsnet(points: PointSet, eps: float) -> EpsNet:
    if not eps > 0.:
        raise UsageError(f"eps must be positive, got {eps}")
    lo, hi = points.box()
    if points.domain_box is None:
        logger.warning("epsnet: no domain box given, using the bounding box of the sample")
    d = points.dim
    width = hi - lo
    n_formula = net_size(eps, d)

    if float(width.norm()) <= eps:
        per_axis = torch.ones(d, dtype=torch.long)
    else:
        # cells of side eps / sqrt(d) have diameter at most eps
        per_axis = torch.clamp(torch.ceil(width * math.sqrt(d) / eps - 1e-12), min=1).to(torch.long)
    total = math.prod(int(m) for m in per_axis)
    if total > MAX_CENTERS:
        raise RefusalError(f"The eps-net would need {total} centers (formula count {n_formula}), above {MAX_CENTERS}")

    side = width / per_axis
    rel = (points.points - lo) / torch.where(side > 0, side, torch.ones_like(side))
    coords = torch.minimum(torch.clamp(torch.floor(rel), min=0).to(torch.long), per_axis - 1)
    strides = torch.ones(d, dtype=torch.long)
    for k in range(d - 2, -1, -1):
        strides[k] = strides[k + 1] * per_axis[k + 1]
    flat = (coords * strides).sum(dim=1)

    occupied, cells = torch.unique(flat, sorted=True, return_inverse=True)
    weights = torch.bincount(cells, minlength=occupied.shape[0]).to(torch.float64) / points.n
    cell_coords = (occupied.unsqueeze(1) // strides) % per_axis
    centers = lo + (cell_coords.to(torch.float64) + 0.5) * side

    representatives = []
    for c in range(occupied.shape[0]):
        members = torch.nonzero(cells == c).reshape(-1)
        dist = (points.points[members] - centers[c]).norm(dim=1)
        representatives.append(int(members[torch.argmin(dist)]))
    logger.info("epsnet: %d of %d cells occupied", occupied.shape[0], total)
    return EpsNet(centers, weights, cells, representatives, n_formula, eps)


def epsnet_compress(points: PointSet, eps: float, kernel: Kernel = None) -> Coreset:
    net = build_epsnet(points, eps)
    kernel_cfg = kernel.to_dict() if kernel is not None else {}
    return net.coreset(points.n, kernel=kernel_cfg, points_id=points.id,
                       meta={"n_eps": net.n_formula, "centers": net.centers.tolist()})
