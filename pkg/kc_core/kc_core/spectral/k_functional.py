# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
import logging
from dataclasses import dataclass, field
from typing import List, Sequence

import torch

from kc_core.errors import ConvergenceError, PreconditionError
from kc_core.kernels import Kernel, PointSet, gram
from kc_core.utils import pivoted_cholesky

logger = logging.getLogger(__name__)


@dataclass
class KFunctionalResult:
    """ Estimate of K(f, t) = inf_h ||f - h||_inf + t ||h|| for a constant f.

    value is attained by an explicit h = sum_i alpha_i k(z_i, .), so it is an upper estimate of the infimum.
    residual is the improvement of the best objective during the final quarter of the optimization.
    """
    t: float
    value: float
    residual: float
    sup_error: float
    h_norm: float
    pivots: List[int] = field(default_factory=list)
    alpha: torch.Tensor = None


class _Candidates:
    # every visited h contributes the pair (||f - h||_inf, ||h||); K(f, t) <= min over pairs of e + t n
    def __init__(self):
        self.errors, self.norms, self.alphas = [], [], []

    def add(self, e, n, alpha):
        self.errors.append(e)
        self.norms.append(n)
        self.alphas.append(alpha)

    def best(self, t):
        e = torch.tensor(self.errors, dtype=torch.float64)
        n = torch.tensor(self.norms, dtype=torch.float64)
        i = int(torch.argmin(e + t * n))
        return i, float(e[i] + t * n[i])


def _descend(G, Kz, c, t, alpha0, eta0, max_iter, candidates):
    alpha = alpha0.clone()
    trace = []
    best = float("inf")
    for it in range(1, max_iter + 1):
        r = c - G @ alpha
        j = int(torch.argmax(r.abs()))
        e = float(r[j].abs())
        Ka = Kz @ alpha
        n = max(float(alpha @ Ka), 0.) ** 0.5
        candidates.add(e, n, alpha.clone())
        best = min(best, e + t * n)
        trace.append(best)
        g = -torch.sign(r[j]) * G[j]
        if n > 0.:
            g = g + t * Ka / n
        gnorm = float(g.norm())
        if gnorm == 0.:
            break
        alpha = alpha - (eta0 / it ** 0.5) * g / gnorm
    tail = trace[-max(1, len(trace) // 4)]
    return best, tail - best


def k_functional_curve(kernel: Kernel, grid: PointSet, ts: Sequence[float], basis_size: int, f_value: float = 1.,
                       eta0: float = 0.1, restarts: int = 5, max_iter: int = 1000, stall_rtol: float = 1e-2
                       ) -> List[KFunctionalResult]:
    """ K(f 1, t) for several t at once.

    h is parametrized over basis_size pivot points chosen from the grid by pivoted Cholesky. For every t the
    convex objective ||f - G alpha||_inf + t (alpha^T K_z alpha)^(1/2) is minimized by normalized subgradient
    descent with step eta0 / sqrt(k), started from s * alpha_fit for s in linspace(0, 1, restarts), where
    alpha_fit is the minimal-norm fit of the constant. All visited candidates are pooled across t, which makes
    the returned curve non-decreasing and concave in t.
    """
    ts = [float(t) for t in ts]
    if any(t <= 0. for t in ts):
        raise PreconditionError("K-functional needs t > 0")
    if basis_size < 1:
        raise PreconditionError("basis_size must be >= 1")
    K = gram(kernel, grid).entries
    pivots, _ = pivoted_cholesky(K, basis_size, eps=1e-12)
    if not pivots:
        pivots = [0]
    idx = torch.tensor(pivots, dtype=torch.long)
    G = K[:, idx]
    Kz = K[idx][:, idx]
    c = torch.full((grid.n,), float(f_value), dtype=torch.float64)
    alpha_fit = torch.linalg.lstsq(G, c.unsqueeze(1)).solution.squeeze(1)
    candidates = _Candidates()
    stalls = {}
    for t in ts:
        worst = 0.
        best_t = float("inf")
        for s in torch.linspace(0., 1., max(restarts, 1), dtype=torch.float64):
            best, stall = _descend(G, Kz, c, t, float(s) * alpha_fit, eta0, max_iter, candidates)
            if best < best_t:
                best_t, worst = best, stall
        stalls[t] = worst
    results = []
    for t in ts:
        i, value = candidates.best(t)
        if not torch.isfinite(torch.tensor(value)):
            raise ConvergenceError(f"K-functional optimization produced a non-finite value at t={t}", value)
        residual = stalls[t]
        if residual > stall_rtol * max(value, 1e-12):
            raise ConvergenceError(f"K-functional still improving at t={t} (residual {residual:.3e})", value)
        results.append(KFunctionalResult(t, value, residual, candidates.errors[i], candidates.norms[i],
                                         list(pivots), candidates.alphas[i]))
        logger.debug("K(%g 1, %g) <= %.6g (residual %.2e)", f_value, t, value, residual)
    return results


def k_functional(kernel: Kernel, grid: PointSet, t: float, basis_size: int, **kwargs) -> KFunctionalResult:
    """ K(1, t) estimate on a grid, see k_functional_curve. """
    return k_functional_curve(kernel, grid, [t], basis_size, **kwargs)[0]
