# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
import math
from typing import Callable, Optional

import torch

from kc_core.errors import PreconditionError
from kc_core.utils import as_points

C_TILDE = 1e21


def vc_j1(d: int, c_tilde: float = C_TILDE) -> float:
    """ Entropy integral bound J(1) = sqrt(log 2 c~) v sqrt(1 + 2 (d + 2)). """
    return max(math.sqrt(math.log(2. * c_tilde)), math.sqrt(1. + 2. * (d + 2)))


def vc_uniform_bound(d: int, n: int, x: float, c_tilde: float = C_TILDE, j1: Optional[float] = None) -> float:
    """ 12 J n^-1/2 + n^-1/2 (2x (24 J n^-1/2 + 1))^1/2 + x / 3n; holds with probability 1 - e^-x.

    j1 overrides the computed J(1), e.g. with the rounded value 8 used for the unit circle.
    """
    if n < 1 or x < 0.:
        raise PreconditionError("vc_uniform_bound needs n >= 1 and x >= 0")
    J = vc_j1(d, c_tilde) if j1 is None else float(j1)
    rn = 1. / math.sqrt(n)
    return 12. * J * rn + rn * math.sqrt(2. * x * (24. * J * rn + 1.)) + x / (3. * n)


def rademacher_bound(gamma: float, p: float, n: int, sup_k_root: float) -> float:
    """ (sqrt(2 log 1/p) + 24 b / gamma) n^-1/2 with b = sup_k_root. """
    if gamma <= 0. or n < 1:
        raise PreconditionError("rademacher_bound needs gamma > 0 and n >= 1")
    if not 0. < p <= 1.:
        raise PreconditionError(f"p must lie in (0, 1], got {p}")
    return (math.sqrt(2. * math.log(1. / p)) + 24. * sup_k_root / gamma) / math.sqrt(n)


def circle_indicator_mass(c: float) -> float:
    """ P(<u, X> <= c) = 1 - arccos(c) / pi for X uniform on the unit circle. """
    return 1. - math.acos(c) / math.pi


def circle_psi_mass(c: float, gamma: float) -> float:
    """ E psi_gamma(<u, X> - c) for X uniform on the unit circle, psi_gamma the ramp from 1 at -gamma to 0 at 0. """
    cg = max(c - gamma, -1.)
    return (1. - math.acos(cg) / math.pi * (1. - c / gamma) - c * math.acos(c) / (math.pi * gamma)
            + (math.sqrt(1. - c * c) - math.sqrt(1. - cg * cg)) / (math.pi * gamma))


def min_sample_size(bound: Callable[[int], float], margin: float, n_max: int = 10 ** 12) -> int:
    """ Smallest n >= 1 with bound(n) < margin, for a bound decreasing in n. """
    if bound(n_max) >= margin:
        raise PreconditionError(f"bound does not drop below {margin} for n <= {n_max}")
    if bound(1) < margin:
        return 1
    lo, hi = 1, n_max
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if bound(mid) < margin:
            hi = mid
        else:
            lo = mid
    return hi


def polytope_sample_size(j1: float, alpha: float) -> int:
    """ n above which the empirical hull of a finite-support law with atoms of mass >= alpha equals the population hull. """
    if alpha <= 0.:
        raise PreconditionError("alpha must be > 0")
    return math.ceil((12. * j1 + math.sqrt(2. * (24. * j1 + 1.)) + 1. / 3.) ** 2 / alpha ** 2)


def circle_directions(count: int) -> torch.Tensor:
    theta = 2. * math.pi * torch.arange(count, dtype=torch.float64) / count
    return torch.stack([torch.cos(theta), torch.sin(theta)], dim=1)


def empirical_ball_radius(points, center, directions: torch.Tensor) -> float:
    """ min over probe directions u of max_i <u, x_i - center>: the radius of the largest centered ball the
    convex hull contains, probed along `directions` (unit rows). Negative when center lies outside the hull. """
    X = as_points(points)
    c = torch.as_tensor(center, dtype=torch.float64).reshape(1, -1)
    support = ((X - c) @ directions.T).max(dim=0).values
    return float(support.min())
