# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
import math
from dataclasses import asdict, dataclass

from kc_core.errors import PreconditionError

NORM_TOL = 1e-9


def unit_ball_volume(d: int) -> float:
    """ beta_d = pi^(d/2) / Gamma(d/2 + 1), through lgamma. """
    return math.exp(0.5 * d * math.log(math.pi) - math.lgamma(0.5 * d + 1.))


def counter_mass(gamma: float, c: float, L: float, d: int) -> float:
    """ Mass c gamma^(d+1) beta_d / ((d+1) (2L)^d) that a density bounded below by c puts behind a gamma-margin. """
    if gamma <= 0. or c <= 0. or L <= 0. or d < 1:
        raise PreconditionError("counter_mass needs gamma > 0, c > 0, L > 0 and d >= 1")
    if gamma / L > 1.:
        raise PreconditionError(f"counter_mass needs gamma / L <= 1, got {gamma / L}")
    return math.exp(math.log(c) + (d + 1) * math.log(gamma) + math.log(unit_ball_volume(d))
                    - math.log(d + 1) - d * math.log(2. * L))


def ball_radius(b: float, c: float, L: float, l: int) -> float:
    """ delta = (b/2) ^ c (b/2)^(l+1) beta_l / ((l+1) (2L)^l) for a diameter lower bound b. """
    if c <= 0. or L <= 0. or l < 1 or b < 0.:
        raise PreconditionError("ball_radius needs b >= 0, c > 0, L > 0 and l >= 1")
    half = b / 2.
    if half == 0.:
        return 0.
    return min(half, c * half ** (l + 1) * unit_ball_volume(l) / ((l + 1) * (2. * L) ** l))


def threshold_terms(delta: float, q: float, c: float, L: float, l: int, sup_k: float):
    """ The two sample-size terms whose maximum n must exceed. sup_k is ||k||_inf. """
    if delta <= 0. or c <= 0. or L <= 0. or l < 1 or sup_k < 0.:
        raise PreconditionError("sample_threshold needs delta, c, L > 0, l >= 1 and sup_k >= 0")
    if not 0. < q < 1.:
        raise PreconditionError(f"q must lie in (0, 1), got {q}")
    log_term = math.sqrt(2. * math.log(1. / q))
    root_k = math.sqrt(sup_k)
    first = ((log_term + 96. * root_k / delta) / (c * unit_ball_volume(l) * (delta / (8. * L)) ** l)) ** 2
    second = ((4. * root_k + 3. * log_term) / (delta / 4.)) ** 2
    return first, second


def sample_threshold(delta: float, q: float, c: float, L: float, l: int, sup_k: float) -> int:
    """ Ceiling of the larger of the two terms; from this sample size on a ball of radius delta/4 around the empirical mean exists with probability q. """
    return max(1, math.ceil(max(threshold_terms(delta, q, c, L, l, sup_k))))


@dataclass
class BallReport:
    b: float
    delta: float
    n_threshold: int
    q: float
    c_density: float
    L: float
    l_dim: int

    def to_dict(self) -> dict:
        return asdict(self)


def ball_report(b: float, q: float, c: float, L: float, l: int, sup_k: float) -> BallReport:
    delta = ball_radius(b, c, L, l)
    if delta <= 0.:
        raise PreconditionError("The diameter lower bound b must be positive to get a ball")
    return BallReport(b, delta, sample_threshold(delta, q, c, L, l, sup_k), q, c, L, l)


def direct_sum_diam_lower(norm_g: float, norm_h: float, b_up: float, b_down: float, diam_C: float, diam_Codot: float) -> float:
    """ Lower bound on the diameter of the direct-sum convex set along a unit direction (g, h). """
    if abs(norm_g ** 2 + norm_h ** 2 - 1.) > NORM_TOL:
        raise PreconditionError(f"(norm_g, norm_h) must lie on the unit sphere, got {norm_g ** 2 + norm_h ** 2}")
    if b_up + b_down < 0.:
        raise PreconditionError("b_up + b_down must be >= 0")
    return max(norm_h * (b_up + b_down) / 2. * diam_C, norm_g * diam_Codot)
