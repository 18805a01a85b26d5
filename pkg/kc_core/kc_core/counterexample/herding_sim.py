# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from kc_core.errors import BoundaryReachedError, InvariantViolationError, UsageError

from .atoms import Atom, AtomKind, AtomSet, SparseVec, et, n_count, next_tilde

logger = logging.getLogger(__name__)

TIE_TOL = 1e-12
NORM_RTOL = 1e-9


@dataclass
class HerdState:
    """ Kernel herding in sequence space with m = 0: w_1 = c_{1,1}, x_t = argmax <w_t, atom>, w_{t+1} = w_t - x_t.

    norm_sq_trace[k] is ||w_{k+1}||^2, so it has one more entry than chosen_log.
    """
    atoms: AtomSet
    w: SparseVec
    t: int = 0
    chosen_log: List[Tuple[AtomKind, int, int]] = field(default_factory=list)
    norm_sq_trace: List[float] = field(default_factory=list)
    ties: List[int] = field(default_factory=list)
    snapshots: Dict[int, SparseVec] = field(default_factory=dict)

    @property
    def norm_sq(self) -> float:
        return self.norm_sq_trace[-1]


def dot(w: SparseVec, vec: SparseVec) -> float:
    return sum(w.get(k, 0.) * v for k, v in vec.items())


def norm_sq(w: SparseVec) -> float:
    return sum(v * v for v in w.values())


def initial_state(atoms: AtomSet) -> HerdState:
    w = dict(atoms.c11.vec)
    return HerdState(atoms, w, norm_sq_trace=[norm_sq(w)])


def candidates(atoms: AtomSet, w: SparseVec) -> Iterable[Atom]:
    """ Every atom whose inner product with w can be non-zero, one representative per group of equal ones.

    The c_{m,j} that share only e_m with w all have inner product beta_m <w, e_m>; the one with the
    smallest j stands in for them, matching the lexicographic tie order.
    """
    seen = set()

    def emit(atom):
        if atom.key not in seen:
            seen.add(atom.key)
            return [atom]
        return []

    out = []
    for idx in w:
        m = idx.n
        if not idx.tilde:
            out += emit(atoms.a[m]) + emit(atoms.b[m])
            if m == 1:
                out += emit(atoms.c11)
                continue
            j = 1
            while j <= n_count(m) and (et(m, j) in w or next_tilde(m, j) in w):
                j += 1
            if j <= n_count(m):
                out += emit(atoms.c(m, j))
        else:
            j = idx.i
            if j <= n_count(m):
                out += emit(atoms.c(m, j))
            if j > 1:
                out += emit(atoms.c(m, j - 1))
            elif m == 2:
                out += emit(atoms.c11)
            else:
                out += emit(atoms.c(m - 1, n_count(m - 1)))
            if j == 1:
                out += emit(atoms.d[m])
    return out


def select(atoms: AtomSet, w: SparseVec, t: int) -> Tuple[Atom, float, bool]:
    scored = [(dot(w, atom.vec), atom) for atom in candidates(atoms, w)]
    best = max(v for v, _ in scored)
    if best <= 0.:
        raise BoundaryReachedError(t, f"no atom has a positive inner product with w_{t}; the truncation at n_max = {atoms.n_max} was reached")
    tied = [(v, atom) for v, atom in scored if v >= best - TIE_TOL]
    value, choice = min(tied, key=lambda p: p[1].key)
    return choice, value, len(tied) > 1


def step(state: HerdState):
    atoms, w = state.atoms, state.w
    t = state.t + 1
    beyond = [idx for idx in w if idx.n > atoms.n_max]
    if beyond:
        raise BoundaryReachedError(t, f"w_{t} has support on {beyond[0]} beyond n_max = {atoms.n_max}")
    atom, value, tie = select(atoms, w, t)
    if tie:
        state.ties.append(t)
        logger.debug("counterexample tie at t=%d resolved to %s", t, atom.label())

    for k, v in atom.vec.items():
        updated = w.get(k, 0.) - v
        if updated == 0.:
            w.pop(k, None)
        else:
            w[k] = updated
    incremental = state.norm_sq_trace[-1] - 2. * value + norm_sq(atom.vec)
    direct = norm_sq(w)
    if abs(incremental - direct) > NORM_RTOL * max(direct, 1.):
        raise InvariantViolationError({"first_violation": f"incremental ||w||^2 drifted at t={t}",
                                       "t": t, "incremental": incremental, "recomputed": direct})
    state.t = t
    state.chosen_log.append((atom.kind, atom.n, atom.i))
    state.norm_sq_trace.append(direct)
    return atom


def run(atoms: AtomSet, T: int, snapshot_steps: Iterable[int] = (), stop_at_boundary: bool = False) -> HerdState:
    """ Runs T herding steps. Snapshots of w_t are kept for the requested t (1 <= t <= T + 1). """
    if T < 1:
        raise UsageError(f"T must be at least 1, got {T}")
    wanted = set(int(s) for s in snapshot_steps)
    state = initial_state(atoms)
    if 1 in wanted:
        state.snapshots[1] = dict(state.w)
    for _ in range(T):
        try:
            step(state)
        except BoundaryReachedError:
            if not stop_at_boundary:
                raise
            logger.warning("counterexample run stopped at the truncation boundary after %d steps", state.t)
            break
        if state.t + 1 in wanted:
            state.snapshots[state.t + 1] = dict(state.w)
    logger.info("counterexample: %d steps, ||w||^2 = %.6g, %d ties", state.t, state.norm_sq, len(state.ties))
    return state


def replay(state: HerdState, steps: Optional[int] = None) -> Iterable[Tuple[int, SparseVec, Tuple[AtomKind, int, int]]]:
    """ Yields (t, w_t, x_t) for t = 1..steps by re-applying the logged choices from w_1. w_t is shared, copy to keep. """
    atoms = state.atoms
    w = dict(atoms.c11.vec)
    steps = len(state.chosen_log) if steps is None else steps
    for t, chosen in enumerate(state.chosen_log[:steps], start=1):
        yield t, w, chosen
        for k, v in atoms.get(*chosen).vec.items():
            updated = w.get(k, 0.) - v
            if updated == 0.:
                w.pop(k, None)
            else:
                w[k] = updated


def trace_to_rows(state: HerdState) -> List[Tuple[int, str, int, int, float]]:
    """ One row per step: t, atom kind, n, i, ||w_t||^2 at the time of the choice. """
    return [(t, kind.name, n, i, state.norm_sq_trace[t - 1])
            for t, (kind, n, i) in enumerate(state.chosen_log, start=1)]
