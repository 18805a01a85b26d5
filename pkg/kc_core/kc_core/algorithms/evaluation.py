# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
from typing import List

import torch

from kc_core.errors import InvariantViolationError, PreconditionError, UsageError
from kc_core.kernels import Kernel, PointSet
from kc_core.storage import Coreset
from kc_core.utils import as_points, as_vector

NORMALIZED_TOL = 1e-9


def embedding_error_sq(kernel: Kernel, atoms, weights, points: PointSet) -> float:
    """ ||sum_i w_i k(a_i, .) - (1/n) sum_j k(X_j, .)||^2 through three Gram sums, clipped at 0. """
    A = as_points(atoms)
    w = as_vector(weights)
    X = points.points
    if A.shape[1] != X.shape[1]:
        raise UsageError(f"Atoms live in R^{A.shape[1]} but the sample in R^{X.shape[1]}")
    aa = float(w @ kernel(A, A) @ w)
    ax = float(w @ kernel(A, X).mean(dim=1))
    xx = float(kernel(X, X).mean())
    return max(aa - 2. * ax + xx, 0.)


def error_sq(kernel: Kernel, coreset: Coreset, points: PointSet) -> float:
    if coreset.n_source != points.n:
        raise UsageError(f"Coreset refers to {coreset.n_source} points, sample has {points.n}")
    idx = torch.tensor(coreset.indices, dtype=torch.long)
    return embedding_error_sq(kernel, points.points[idx], coreset.weights, points)


def near_mean_extremes(kernel: Kernel, points: PointSet, eps: float) -> List[int]:
    """ Indices i with ||k(X_i, .) - m_n|| < eps for a normalized kernel.

    Any two such sections satisfy k(X_i, X_j) >= 1 - 2 eps^2, which is checked.
    """
    if not eps > 0.:
        raise UsageError(f"eps must be positive, got {eps}")
    K = kernel(points.points, points.points)
    diag = torch.diagonal(K)
    if ((diag - 1.).abs() > NORMALIZED_TOL).any():
        bad = int(torch.argmax((diag - 1.).abs()))
        raise PreconditionError(f"near_mean_extremes needs k(x, x) = 1, got {float(diag[bad])} at index {bad}")
    mean = K.mean(dim=0)
    dist_sq = diag - 2. * mean + float(mean.mean())
    chosen = torch.nonzero(dist_sq < eps**2).reshape(-1)
    if chosen.numel() > 1:
        sub = K[chosen][:, chosen]
        low = sub < 1. - 2. * eps**2 - NORMALIZED_TOL
        if low.any():
            i, j = (int(chosen[v]) for v in low.nonzero()[0])
            raise InvariantViolationError({"first_violation": f"k(X_{i}, X_{j}) < 1 - 2 eps^2",
                                           "i": i, "j": j, "value": float(K[i, j])})
    return chosen.tolist()
