# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
import logging
from typing import Tuple

import torch

from kc_core.errors import InvariantViolationError, UsageError
from kc_core.kernels import Kernel, PointSet
from kc_core.storage import CompressionTrace, Coreset
from kc_core.storage.coreset import SIMPLEX_TOL

from .oracle import GramOracle, make_oracle

logger = logging.getLogger(__name__)

MONOTONE_RTOL = 1e-12


class FrankWolfe:
    """ Conditional gradient on f(w) = ||sum_i w_i k(X_i, .) - m_n||^2 over the simplex, exact line search.

    Tracks g = K w, ||m_hat||^2 and <m_hat, m_n> so each iteration needs one Gram row.
    The first step moves to the vertex with the most negative gradient at 0, with step size 1.
    """
    oracle: GramOracle

    def __init__(self, oracle: GramOracle):
        self.oracle = oracle
        n = oracle.n
        self.storage = None  # initialized later
        self.step_record = CompressionTrace.Step()
        self.t = 0
        self.weights = torch.zeros(n, dtype=torch.float64)
        self.g = torch.zeros(n, dtype=torch.float64)
        self.hat_norm_sq = 0.
        self.hat_dot_mean = 0.
        self.error_sq = oracle.mean_norm_sq
        self.converged = False
        self.scale = float(oracle.diag.abs().max())

    def init_storage(self, num_iterations: int):
        self.storage = CompressionTrace(num_iterations)

    def select(self) -> Tuple[int, bool]:
        # <grad f, k(X_i, .)> = 2 (g_i - mu_i)
        direction = self.g - self.oracle.mean
        best = direction.min()
        return int(torch.argmin(direction)), bool((direction == best).sum() > 1)

    def step(self) -> CompressionTrace.Step:
        o = self.oracle
        idx, tie = self.select()
        row = o.row(idx)
        k_xx, mu_x, g_x = float(o.diag[idx]), float(o.mean[idx]), float(self.g[idx])

        if self.t == 0:
            gamma = 1.
        else:
            # d = m_hat - k(x*, .)
            d_norm_sq = self.hat_norm_sq - 2. * g_x + k_xx
            # m_hat already equals the chosen section: no descent direction left
            if d_norm_sq <= 0.:
                self.converged = True
                return None
            num = self.hat_norm_sq - g_x - self.hat_dot_mean + mu_x
            gamma = min(max(num / d_norm_sq, 0.), 1.)

        self.hat_norm_sq = (1. - gamma)**2 * self.hat_norm_sq + 2. * gamma * (1. - gamma) * g_x + gamma**2 * k_xx
        self.hat_dot_mean = (1. - gamma) * self.hat_dot_mean + gamma * mu_x
        self.g = (1. - gamma) * self.g + gamma * row
        self.weights *= (1. - gamma)
        self.weights[idx] += gamma
        total = float(self.weights.sum())
        if abs(total - 1.) > SIMPLEX_TOL:
            self.weights /= total
        self.t += 1

        error_sq = self.hat_norm_sq - 2. * self.hat_dot_mean + o.mean_norm_sq
        if self.t > 1 and error_sq > self.error_sq + MONOTONE_RTOL * max(self.scale, 1.):
            raise InvariantViolationError({
                "first_violation": f"frank_wolfe error increased at t={self.t}",
                "t": self.t, "previous": self.error_sq, "current": error_sq})
        self.error_sq = error_sq

        self.step_record.chosen_index = idx
        self.step_record.step_size = gamma
        self.step_record.error_sq = error_sq
        self.step_record.tie = tie
        if self.storage is not None:
            self.storage.add_step(self.step_record)
        record = self.step_record
        self.step_record = CompressionTrace.Step()
        return record

    def coreset(self, **kwargs) -> Coreset:
        support = torch.nonzero(self.weights > 0.).reshape(-1).tolist()
        return Coreset(support, self.weights[support], self.oracle.n, **kwargs)


def frank_wolfe(kernel: Kernel, points: PointSet, T: int,
                streaming: bool = False, target_weights=None) -> Tuple[Coreset, CompressionTrace]:
    """ Runs up to T conditional gradient steps; stops early only when the line-search direction vanishes.

    The target is the uniform mean embedding unless `target_weights` gives another convex combination.
    """
    if T < 1:
        raise UsageError(f"T must be at least 1, got {T}")
    alg = FrankWolfe(make_oracle(kernel, points, streaming, target_weights))
    alg.init_storage(T)
    for _ in range(T):
        if alg.step() is None:
            logger.info("frank_wolfe: zero direction after %d steps", alg.t)
            break
    alg.storage.truncate()
    return alg.coreset(kernel=kernel.to_dict(), points_id=points.id), alg.storage
