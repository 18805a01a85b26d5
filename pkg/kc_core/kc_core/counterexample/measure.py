# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
"""Mean of the feature map under the density of the construction, evaluated segment by segment.

On every linear segment [a, b] of the feature map running between 0 and an atom h, with constant density mu,
the contribution to the mean is mu <., h> (b - a) / 2. With the three thirds of [0, 1] rescaled this gives
m = (1/6) sum_atoms mu_atom L_atom h, where L_atom is the total length of the segments ending at that atom:

    a_1: 13/24,  a_n (n >= 2): (1/n - 1/(n+2)) / 4,  b_n: 1 / (2 (n+1)(n+2)),  c_{n,i} and d_n: Delta_n,
    Delta_n = (1/n - 1/(n+1)) / N_n.
"""
import logging
import math
from collections import defaultdict
from typing import Dict, Optional

from kc_core.errors import InvariantViolationError, UsageError

from .atoms import (N_MAX_LIMIT, Atom, AtomKind, AtomSet, BasisIndex, a_coef, alpha, b_coef, beta, build_atoms, e, et,
                    n_count)

logger = logging.getLogger(__name__)

MEAN_TOL = 1e-10
TAIL_TERMS = 200


def delta(n: int) -> float:
    return (1. / n - 1. / (n + 1)) / n_count(n)


def density_constants(n_max: int, normalizer: float = 1.) -> dict:
    """ The density levels on the a, b, c and d segments for n <= n_max, scaling linearly in the normalizer. """
    N = normalizer
    a1_len = 13. / 24.
    frak_a = {1: N * (-b_coef(1)) / (24. * a_coef(1)) / a1_len}
    frak_c = {1: N * (-b_coef(1)) / 12.}
    for n in range(2, n_max + 1):
        frak_a[n] = n / (n + 1) * N * (-b_coef(n)) / a_coef(n)
        frak_c[n] = n / (2. * (n + 2)) * N * b_coef(n) / beta(n) * delta(n + 1) / delta(n)

    frak_b = {1: 2. * 6. * (a1_len * frak_a[1] * a_coef(1) / (-b_coef(1)) + 0.5 * frak_c[1] * 1. / (-b_coef(1)))}
    for n in range(2, n_max + 1):
        frak_b[n] = 2. * (n + 1) * (n + 2) * (
            0.25 * (1. / n - 1. / (n + 2)) * frak_a[n] * a_coef(n) / (-b_coef(n))
            + (1. / n - 1. / (n + 1)) * frak_c[n] * beta(n) / (-b_coef(n)))

    # <c_{1,1}, et_(2,1)> = alpha_{2,1} and <-d_2, et_(2,1)> = alpha_{2,1} / 2
    frak_d = {2: 2. * (delta(1) / delta(2) * frak_c[1] + frak_c[2])}
    for n in range(3, n_max + 1):
        frak_d[n] = 2. * (delta(n - 1) / delta(n) * frak_c[n - 1] - frak_c[n])
    return {"a": frak_a, "b": frak_b, "c": frak_c, "d": frak_d}


def _check_positive(consts: dict):
    for name, table in consts.items():
        for n, value in table.items():
            # b_n = N (1 - Delta_{n+1}/Delta_n) is only shown to be non-negative
            ok = value >= 0. if name == "b" else value > 0.
            if not ok or not math.isfinite(value):
                raise InvariantViolationError({"first_violation": f"density level {name}_{n} = {value!r} is not positive",
                                               "constant": name, "n": n, "value": value})


def _mass(consts: dict, n_max: int) -> float:
    """ Integral of the density over the segments with n <= n_max, excluding the unit-level gaps of the d part. """
    a, b, c, d = consts["a"], consts["b"], consts["c"], consts["d"]
    total = a[1] * 13. / 24.
    total += sum(a[n] * (1. / n - 1. / (n + 2)) / 4. for n in range(2, n_max + 1))
    total += sum(b[n] / (2. * (n + 1) * (n + 2)) for n in range(1, n_max + 1))
    total += sum(c[n] * (1. / n - 1. / (n + 1)) for n in range(1, n_max + 1))
    total += sum(d[n] * delta(n) for n in range(2, n_max + 1))
    return total / 3.


def _unit_mass(n_last: int) -> float:
    """ Mass of the density-one gaps of the d part: (1/2 + sum_{2 <= n <= n_last} (1/n - 1/(n+1) - Delta_n)) / 3. """
    return (0.5 + sum(1. / n - 1. / (n + 1) - delta(n) for n in range(2, n_last + 1))) / 3.


def segment_weight(atom: Atom, consts: dict) -> float:
    """ mu_atom L_atom / 6, the factor in front of atom h in the mean. """
    n = atom.n
    if atom.kind == AtomKind.A:
        length = 13. / 24. if n == 1 else (1. / n - 1. / (n + 2)) / 4.
        return consts["a"][n] * length / 6.
    if atom.kind == AtomKind.B:
        return consts["b"][n] / (2. * (n + 1) * (n + 2)) / 6.
    table = consts["c"] if atom.kind == AtomKind.C else consts["d"]
    return table[n] * delta(n) / 6.


def atom_mean(atoms: AtomSet, consts: dict) -> Dict[BasisIndex, float]:
    """ sum_atoms mu_atom L_atom h / 6, accumulated from the sparse atom vectors. """
    mean = defaultdict(float)
    for atom in atoms:
        w = segment_weight(atom, consts)
        for idx, value in atom.vec.items():
            mean[idx] += w * value
    return mean


def closed_form_coordinates(consts: dict, n_max: int) -> Dict[str, float]:
    """ The e_n and et_(n,1) coordinates of the mean summed per segment family. et_(n,i), i >= 2, vanish identically. """
    a, b, c, d = consts["a"], consts["b"], consts["c"], consts["d"]
    coords = {}
    coords[str(e(1))] = (a[1] * a_coef(1) * 13. / 24. + b[1] * b_coef(1) / 12. + c[1] * 1. * delta(1)) / 6.
    for n in range(2, n_max + 1):
        coords[str(e(n))] = (a[n] * a_coef(n) * (1. / n - 1. / (n + 2)) / 4.
                             + b[n] * b_coef(n) / (2. * (n + 1) * (n + 2))
                             + c[n] * beta(n) * n_count(n) * delta(n)) / 6.
    a21 = alpha(2, 1)
    coords[str(et(2, 1))] = (delta(1) * c[1] * a21 + delta(2) * c[2] * a21 - delta(2) * d[2] * 0.5 * a21) / 6.
    for n in range(3, n_max + 1):
        an1 = alpha(n, 1)
        coords[str(et(n, 1))] = (-delta(n - 1) * c[n - 1] * an1 + delta(n) * c[n] * an1 + delta(n) * d[n] * 0.5 * an1) / 6.
    return coords


def measure_mean_check(n_max: int, atoms: Optional[AtomSet] = None) -> dict:
    """ Builds the density for n <= n_max and checks that every coordinate of its mean inside the truncation vanishes.

    The mean is accumulated from the atom vectors themselves and compared with the per-family closed form.
    The normalizer makes the truncated a, b, c, d mass plus the full mass of the unit-level gaps equal to one;
    the reported residual is the unit-level mass beyond n_max.
    """
    if not 2 <= n_max <= N_MAX_LIMIT:
        raise UsageError(f"n_max must lie in [2, {N_MAX_LIMIT}], got {n_max}")
    if atoms is None:
        atoms = build_atoms(n_max)
    elif atoms.n_max != n_max:
        raise UsageError(f"Atom set has n_max = {atoms.n_max}, expected {n_max}")
    unit_inf = (1. - sum(delta(n) for n in range(2, TAIL_TERMS))) / 3.
    unit_trunc = _unit_mass(n_max)
    normalizer = (1. - unit_inf) / _mass(density_constants(n_max), n_max)
    consts = density_constants(n_max, normalizer)
    _check_positive(consts)

    mean = atom_mean(atoms, consts)
    closed = closed_form_coordinates(consts, n_max)
    coords = {name: 0. for name in closed}
    for idx, value in mean.items():
        if str(idx) in coords:
            coords[str(idx)] = value
    closed_gap = max(abs(coords[k] - closed[k]) for k in closed)

    # et_(n,i), i >= 2: +alpha_{n,i} from c_{n,i} against -alpha_{n,i} from c_{n,i-1}
    tilde_max, tilde_name, tilde_count = 0., None, 0
    for idx, value in mean.items():
        if idx.tilde and idx.i >= 2 and idx.n <= n_max:
            tilde_count += 1
            if abs(value) > tilde_max:
                tilde_max, tilde_name = abs(value), str(idx)

    worst_name = max(coords, key=lambda k: abs(coords[k]))
    if tilde_max > abs(coords[worst_name]):
        worst_name = tilde_name
    worst = max(max(abs(v) for v in coords.values()), tilde_max)
    integral = normalizer * _mass(density_constants(n_max), n_max) + unit_trunc
    report = {
        "ok": worst <= MEAN_TOL and closed_gap <= MEAN_TOL,
        "n_max": n_max,
        "normalizer": normalizer,
        "max_abs_coordinate": worst,
        "worst_coordinate": worst_name,
        "closed_form_gap": closed_gap,
        "coordinates_checked": len(coords) + tilde_count,
        "integral_truncated": integral,
        "tail_residual": 1. - integral,
        "levels_positive": True,
        "coordinates": coords,
    }
    if not report["ok"]:
        logger.warning("measure_mean_check: coordinate %s = %.3e, closed form gap %.3e", worst_name, worst, closed_gap)
    return report
