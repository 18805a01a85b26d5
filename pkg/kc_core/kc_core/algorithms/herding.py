# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
import logging
from typing import Tuple

import torch

from kc_core.errors import InvariantViolationError, UsageError
from kc_core.kernels import Kernel, PointSet
from kc_core.storage import CompressionTrace, Coreset

from .oracle import GramOracle, make_oracle

logger = logging.getLogger(__name__)

IDENTITY_RTOL = 1e-9


class KernelHerding:
    """ Kernel herding towards the empirical mean embedding m_n, with candidates restricted to the sample.

    The weight vector w_t = t (m_n - m_hat_t) is never formed. Instead the scores
    s_j = <w_t, k(X_j, .)> are updated with one Gram row per iteration:
    s <- s + <m_n, k(X_j, .)> - K[x*, j]. The first selection is `init_index`.
    """
    oracle: GramOracle

    def __init__(self, oracle: GramOracle, init_index: int = 0, check_identity: bool = True):
        if not 0 <= init_index < oracle.n:
            raise UsageError(f"init_index {init_index} is out of range for {oracle.n} points")
        self.oracle = oracle
        self.init_index = init_index
        self.check_identity = check_identity
        self.storage = None  # initialized later
        self.step_record = CompressionTrace.Step()

        n = oracle.n
        self.t = 0
        self.scores = torch.zeros(n, dtype=torch.float64)
        self.counts = torch.zeros(n, dtype=torch.float64)
        self.chosen = []
        # ||w_t||^2 by its own recursion, and the pieces of the direct error expansion
        self.w_norm_sq = 0.
        self.w_dot_mean = 0.
        self.pair_sum = 0.
        self.mean_sum = 0.

    def init_storage(self, num_iterations: int):
        self.storage = CompressionTrace(num_iterations)

    def select(self) -> Tuple[int, bool]:
        if self.t == 0:
            return self.init_index, False
        best = self.scores.max()
        idx = int(torch.argmax(self.scores))
        return idx, bool((self.scores == best).sum() > 1)

    def step(self) -> CompressionTrace.Step:
        o = self.oracle
        idx, tie = self.select()
        if tie:
            logger.debug("herding tie at t=%d, taking index %d", self.t + 1, idx)
        row = o.row(idx)
        k_xx, mu_x = float(o.diag[idx]), float(o.mean[idx])

        # w_{t+1} = w_t - (k(x*, .) - m_n)
        self.w_norm_sq += -2. * (float(self.scores[idx]) - self.w_dot_mean) + (k_xx - 2. * mu_x + o.mean_norm_sq)
        self.w_dot_mean += o.mean_norm_sq - mu_x
        self.scores += o.mean - row

        self.pair_sum += 2. * float(row @ self.counts) + k_xx
        self.counts[idx] += 1.
        self.mean_sum += mu_x
        self.chosen.append(idx)
        self.t += 1
        t = self.t

        error_sq = self.pair_sum / t**2 - 2. * self.mean_sum / t + o.mean_norm_sq
        if self.check_identity:
            self._check_identity(error_sq)

        self.step_record.chosen_index = idx
        self.step_record.step_size = 1. / t
        self.step_record.error_sq = error_sq
        self.step_record.tie = tie
        if self.storage is not None:
            self.storage.add_step(self.step_record)
        record = self.step_record
        self.step_record = CompressionTrace.Step()
        return record

    def _check_identity(self, error_sq: float):
        t = self.t
        scale = float(self.oracle.diag.abs().max()) + abs(self.oracle.mean_norm_sq)
        gap = abs(self.w_norm_sq - t**2 * error_sq)
        if gap > IDENTITY_RTOL * max(t**2 * scale, self.w_norm_sq):
            raise InvariantViolationError({
                "first_violation": f"||w_t|| = t * error fails at t={t}",
                "t": t, "w_norm_sq": self.w_norm_sq, "t_sq_error_sq": t**2 * error_sq})

    def coreset(self, **kwargs) -> Coreset:
        return Coreset.uniform(self.chosen, self.oracle.n, **kwargs)


def herd(kernel: Kernel, points: PointSet, T: int, init_index: int = 0,
         streaming: bool = False) -> Tuple[Coreset, CompressionTrace]:
    """ Runs T herding iterations. Returns the uniform-weight coreset over the chosen indices and the trace. """
    if T < 1:
        raise UsageError(f"T must be at least 1, got {T}")
    alg = KernelHerding(make_oracle(kernel, points, streaming), init_index)
    alg.init_storage(T)
    for _ in range(T):
        alg.step()
    if alg.storage.clipped.any():
        logger.warning("herding: %d negative squared errors clipped to 0", int(alg.storage.clipped.sum()))
    return alg.coreset(kernel=kernel.to_dict(), points_id=points.id), alg.storage
