# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
import logging

import torch

from kc_core.errors import UsageError
from kc_core.kernels import Kernel, PointSet, gram, gram_rows
from kc_core.utils import as_vector

logger = logging.getLogger(__name__)

STREAM_CHUNK = 1024


def _target(weights, n: int):
    if weights is None:
        return None
    v = as_vector(weights)
    if v.shape[0] != n or (v < 0).any() or abs(float(v.sum()) - 1.) > 1e-9:
        raise UsageError(f"Target weights must be a probability vector of length {n}")
    return v / v.sum()


class GramOracle:
    """ Inner products between the sections k(X_i, .) of a sample and its mean embedding.

    Holds the full Gram matrix. `mean` is the vector <m_n, k(X_j, .)> = (1/n) sum_i K_ij and
    `mean_norm_sq` is ||m_n||^2. With `target_weights` v the target is sum_i v_i k(X_i, .) instead.
    """
    streaming = False

    def __init__(self, kernel: Kernel, points: PointSet, target_weights=None):
        self.kernel = kernel
        self.points = points
        self.n = points.n
        self.target_weights = _target(target_weights, self.n)
        self.K = gram(kernel, points).entries
        self.diag = torch.diagonal(self.K).clone()
        if self.target_weights is None:
            self.mean = self.K.mean(dim=0)
            self.mean_norm_sq = float(self.mean.mean())
        else:
            self.mean = self.K @ self.target_weights
            self.mean_norm_sq = float(self.target_weights @ self.mean)

    def row(self, i: int) -> torch.Tensor:
        return self.K[i]


class StreamingGramOracle(GramOracle):
    """ Same interface, O(n) memory: rows are recomputed on demand. """
    streaming = True

    def __init__(self, kernel: Kernel, points: PointSet, target_weights=None, chunk: int = STREAM_CHUNK):
        self.kernel = kernel
        self.points = points
        self.n = points.n
        self.target_weights = _target(target_weights, self.n)
        v = torch.full((self.n,), 1. / self.n, dtype=torch.float64) if self.target_weights is None else self.target_weights
        self.K = None
        self.diag = kernel.diag(points.points)
        total = torch.zeros(self.n, dtype=torch.float64)
        for start in range(0, self.n, chunk):
            rows = range(start, min(start + chunk, self.n))
            total += v[start:start + chunk] @ gram_rows(kernel, points, list(rows))
        self.mean = total
        self.mean_norm_sq = float(v @ self.mean)
        logger.debug("streaming oracle ready for %d points", self.n)

    def row(self, i: int) -> torch.Tensor:
        return gram_rows(self.kernel, self.points, [i])[0]


def make_oracle(kernel: Kernel, points: PointSet, streaming: bool = False, target_weights=None) -> GramOracle:
    if streaming:
        return StreamingGramOracle(kernel, points, target_weights)
    return GramOracle(kernel, points, target_weights)
