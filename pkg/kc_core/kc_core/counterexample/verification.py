# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
import csv
import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

from kc_core.errors import InvariantViolationError, UsageError

from .atoms import AtomKind, AtomSet, a_coef, a_prime, alpha, beta, e, et, n_count
from .herding_sim import HerdState, replay

logger = logging.getLogger(__name__)

ABS_TOL = 1e-9
FIRST_BOUND_N = 7
NORM_FLOOR = 3.


def log_floor_index(n: int) -> int:
    """ N(n) = ceil(1 + log2(n ln(n+1))). """
    return math.ceil(1. + math.log2(n * math.log(n + 1)))


def gamma_lower_bound(j: int, n: int) -> float:
    """ min{a'_j, max{2^j <a_n, e_n> / n - 2^-j, 0}}, the floor on -<e_j, w> while a_n is the next a atom. """
    return min(a_prime(j), max(2.0**j * a_coef(n) / n - 2.0**-j, 0.))


def implied_norm_sq(n: int) -> float:
    """ (n - N(n)) / ln^2(n + 1), the squared norm forced by the coordinate ceiling on e_{N(n)}, ..., e_{n-1}. """
    return (n - log_floor_index(n)) / math.log(n + 1)**2


def norm_sq_bound(n: int) -> float:
    """ (n - 3) / ln^2(n + 1) - 2 / ln 2 """
    return (n - 3) / math.log(n + 1)**2 - 2. / math.log(2.)


def divergence_threshold() -> int:
    """ First n >= 7 at which the lower bound on ||w_t||^2 is positive. """
    n = FIRST_BOUND_N
    while norm_sq_bound(n) <= 0.:
        n += 1
    return n


class _Frontier:
    """ Smallest a index and smallest (n, i) of a c atom other than c_{1,1} not chosen so far. """

    def __init__(self, atoms: AtomSet):
        self.atoms = atoms
        self.a_chosen = set()
        self.c_chosen = set()
        self.a_next = 1
        self.c_next = (2, 1)

    def add(self, kind, n, i):
        if kind == AtomKind.A:
            self.a_chosen.add(n)
            while self.a_next in self.a_chosen:
                self.a_next += 1
        elif kind == AtomKind.C and (n, i) != (1, 1):
            self.c_chosen.add((n, i))
            while self.c_next in self.c_chosen:
                m, j = self.c_next
                self.c_next = (m, j + 1) if j < n_count(m) else (m + 1, 1)


def _check_form(w, n: int, c_next: Tuple[int, int]) -> Optional[str]:
    """ Returns a description of the first broken part of the two-case form of w_t, or None. """
    fn, fi = c_next
    if fn == n and 1 <= fi <= n_count(n):
        expected = {e(n): -(fi - 1) * beta(n), et(n, fi): alpha(n, fi)}
    elif (fn, fi) == (n + 1, 1):
        expected = {e(n): 1. / n, et(n + 1, 1): alpha(n + 1, 1)}
    else:
        return f"next c atom is c({fn},{fi}) while a_{n} is the next a atom"
    for idx, value in expected.items():
        if abs(w.get(idx, 0.) - value) > ABS_TOL:
            return f"<{idx}, w> = {w.get(idx, 0.)!r}, expected {value!r}"
    for idx, value in w.items():
        if idx in expected:
            continue
        if idx.tilde or idx.n >= n:
            return f"unexpected support {idx} with coefficient {value!r}"
    for j in range(1, n):
        gamma = -w.get(e(j), 0.)
        steps = round((a_prime(j) - gamma) * 2.0**j)
        if steps < 0 or abs(a_prime(j) - steps * 2.0**-j - gamma) > ABS_TOL:
            return f"gamma_{j} = {gamma!r} is not on the grid a'_{j} - l 2^-{j}"
        if gamma > a_prime(j) + ABS_TOL:
            return f"gamma_{j} = {gamma!r} > a'_{j} = {a_prime(j)!r}"
        if gamma < gamma_lower_bound(j, n) - ABS_TOL:
            return f"gamma_{j} = {gamma!r} < {gamma_lower_bound(j, n)!r}"
    return None


def verify_invariants(state: HerdState, strict: bool = False) -> dict:
    """ Checks the four step-wise properties of the run.

    (1) every choice is an atom of the construction and c_{1,1} is not chosen again,
    (2) w_t has the two-case form with every gamma_j on its grid and within its bounds,
    (3) for n >= 7 every <e_i, w_t> with N(n) <= i <= n - 1 is at most -1/ln(n+1),
    (4) the a atoms are chosen in increasing order, each once.
    """
    atoms = state.atoms
    frontier = _Frontier(atoms)
    counts = {"1": 0, "2": 0, "3": 0}
    first = None

    def fail(t, invariant, detail):
        nonlocal first
        if first is None:
            first = {"t": t, "invariant": invariant, "detail": detail}

    for t, w, chosen in replay(state):
        kind, n_c, i_c = chosen
        if not atoms.contains(kind, n_c, i_c):
            fail(t, "1", f"chosen atom {kind.name}({n_c},{i_c}) is not in the construction")
        elif kind == AtomKind.C and (n_c, i_c) == (1, 1):
            fail(t, "1", "c_{1,1} chosen after initialization")
        else:
            counts["1"] += 1

        n = frontier.a_next
        if t >= 2:
            problem = _check_form(w, n, frontier.c_next)
            if problem is None:
                counts["2"] += 1
            else:
                fail(t, "2", problem)

        if n >= FIRST_BOUND_N:
            ceiling = -1. / math.log(n + 1)
            bad = [i for i in range(log_floor_index(n), n) if w.get(e(i), 0.) > ceiling + ABS_TOL]
            if bad:
                fail(t, "3", f"<e_{bad[0]}, w_{t}> = {w.get(e(bad[0]), 0.)!r} > {ceiling!r}")
            else:
                counts["3"] += 1
        frontier.add(kind, n_c, i_c)

    a_sequence = [n for kind, n, _ in state.chosen_log if kind == AtomKind.A]
    a_ok = a_sequence == list(range(1, len(a_sequence) + 1))
    if not a_ok:
        k = next(k for k, n in enumerate(a_sequence) if n != k + 1)
        a_steps = [t for t, (kind, _, _) in enumerate(state.chosen_log, start=1) if kind == AtomKind.A]
        fail(a_steps[k], "4", f"choice number {k + 1} among the a atoms is a_{a_sequence[k]}")

    report = {
        "ok": first is None,
        "steps": state.t,
        "n_max": atoms.n_max,
        "checked": counts,
        "a_horizon": len(a_sequence),
        "ties": list(state.ties),
        "first_violation": first,
    }
    if strict and first is not None:
        raise InvariantViolationError(report)
    return report


def divergence_check(state: HerdState, strict: bool = False, norm_floor: float = NORM_FLOOR) -> dict:
    """ Compares ||w_t||^2 with (n - 3)/ln^2(n + 1) - 2/ln 2 whenever a_n, n >= 7, is the next a atom.

    The run also has to push ||w_t|| above `norm_floor` somewhere within its horizon.
    """
    frontier = _Frontier(state.atoms)
    envelope: Dict[int, dict] = {}
    first = None
    for t, (kind, n_c, i_c) in enumerate(state.chosen_log, start=1):
        n = frontier.a_next
        value = state.norm_sq_trace[t - 1]
        if n >= FIRST_BOUND_N:
            bound = norm_sq_bound(n)
            entry = envelope.setdefault(n, {"n": n, "bound": bound, "implied": implied_norm_sq(n), "min_norm_sq": value})
            entry["min_norm_sq"] = min(entry["min_norm_sq"], value)
            if value < bound - ABS_TOL and first is None:
                first = {"t": t, "n": n, "norm_sq": value, "bound": bound}
        frontier.add(kind, n_c, i_c)
    max_norm_sq = max(state.norm_sq_trace, default=0.)
    max_norm = math.sqrt(max_norm_sq)
    if max_norm <= norm_floor:
        logger.warning("divergence_check: ||w_t|| stays at or below %g for all %d steps", norm_floor, state.t)
    report = {
        "ok": first is None and max_norm > norm_floor,
        "max_norm_sq": max_norm_sq,
        "max_norm": max_norm,
        "norm_floor": norm_floor,
        "final_norm_sq": state.norm_sq,
        "positive_from_n": divergence_threshold(),
        "envelope": [envelope[n] for n in sorted(envelope)],
        "first_violation": first,
    }
    if strict and not report["ok"]:
        raise InvariantViolationError(report)
    return report


def coefficient_profile(state: HerdState, m_values: Sequence[int]) -> Dict[int, List[Tuple[int, float, float]]]:
    """ For each m, the rows (j, |<e_j, w_t>|, lower bound) at the step t where a_m is chosen. """
    a_steps = {n: t for t, (kind, n, _) in enumerate(state.chosen_log, start=1) if kind == AtomKind.A}
    missing = [m for m in m_values if m not in a_steps]
    if missing:
        raise UsageError(f"a_{missing[0]} is not chosen within {state.t} steps; reachable m: {sorted(a_steps)}")
    tables = {}
    wanted = {a_steps[m]: m for m in m_values}
    for t, w, _ in replay(state, max(wanted) if wanted else 0):
        if t not in wanted:
            continue
        m = wanted[t]
        rows = []
        for idx in sorted(k for k in w if not k.tilde):
            lower = gamma_lower_bound(idx.n, m) if idx.n < m else 0.
            rows.append((idx.n, abs(w[idx]), lower))
        tables[m] = rows
    return {m: tables[m] for m in m_values}


def write_profile_csv(rows, path: str):
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["n", "abs_coef", "lower_bound"])
        for n, value, lower in rows:
            writer.writerow([n, repr(value), repr(lower)])
