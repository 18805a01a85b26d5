# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
import hashlib
import logging
from typing import List, Tuple

import numpy as np
import torch

logger = logging.getLogger(__name__)

# singular values below PINV_RTOL * sigma_max count as zero
PINV_RTOL = 1e-10
# eigenvalues below RANK_RTOL * lambda_max count as zero
RANK_RTOL = 1e-10
PSD_RTOL = 1e-8


def as_points(x, dtype=torch.float64) -> torch.Tensor:
    """ Converts scalars, vectors, lists or arrays to an (n, l) tensor. A 1-D input is read as n points in R^1. """
    t = torch.as_tensor(np.asarray(x, dtype=np.float64) if not isinstance(x, torch.Tensor) else x, dtype=dtype)
    if t.dim() == 0:
        t = t.reshape(1, 1)
    elif t.dim() == 1:
        t = t.unsqueeze(1)
    return t


def as_vector(x, dtype=torch.float64) -> torch.Tensor:
    t = torch.as_tensor(np.asarray(x, dtype=np.float64) if not isinstance(x, torch.Tensor) else x, dtype=dtype)
    return t.reshape(-1)


def tensor_digest(*tensors) -> str:
    h = hashlib.sha256()
    for t in tensors:
        if t is None:
            h.update(b'none')
            continue
        a = np.ascontiguousarray(t.detach().cpu().numpy() if isinstance(t, torch.Tensor) else np.asarray(t))
        h.update(str(a.shape).encode())
        h.update(a.tobytes())
    return h.hexdigest()


def psd_tolerance(K: torch.Tensor) -> float:
    return PSD_RTOL * abs(float(torch.trace(K)))


def min_eigenvalue(K: torch.Tensor) -> float:
    if K.numel() == 0:
        return 0.
    return float(torch.linalg.eigvalsh(K)[0])


def pinv(K: torch.Tensor, rtol: float = PINV_RTOL) -> torch.Tensor:
    """ Moore-Penrose pseudo-inverse of a symmetric matrix through its eigendecomposition. """
    evals, evecs = torch.linalg.eigh(K)
    cutoff = rtol * evals.abs().max().clamp_min(0.)
    keep = evals.abs() > cutoff
    dropped = int((~keep).sum())
    if dropped:
        logger.debug("pinv: %d of %d eigenvalues below threshold", dropped, K.shape[0])
    inv = torch.zeros_like(evals)
    inv[keep] = 1. / evals[keep]
    return (evecs * inv) @ evecs.T


def pinv_general(M: torch.Tensor, rtol: float = PINV_RTOL) -> torch.Tensor:
    """ Pseudo-inverse of a general matrix, singular values at or below rtol * sigma_max dropped. """
    U, S, Vh = torch.linalg.svd(M, full_matrices=False)
    keep = S > rtol * S.max().clamp_min(0.)
    inv = torch.zeros_like(S)
    inv[keep] = 1. / S[keep]
    return (Vh.T * inv) @ U.T


def numerical_rank(K: torch.Tensor, rtol: float = RANK_RTOL) -> int:
    evals = torch.linalg.eigvalsh(K)
    if evals.numel() == 0:
        return 0
    top = float(evals.abs().max())
    if top == 0.:
        return 0
    return int((evals > rtol * top).sum())


def pivoted_cholesky(K: torch.Tensor, count: int, eps: float = 0.) -> Tuple[List[int], torch.Tensor]:
    """ Greedy diagonal-pivoted Cholesky on a PSD matrix.

    Args:
        K: (n, n) PSD matrix
        count: maximal number of pivots
        eps: stop when the largest remaining pivot falls below eps * max(diag(K))

    Returns:
        list of pivot indices in selection order and the (n, r) factor L with K ~ L L^T
    """
    n = K.shape[0]
    count = min(count, n)
    diag = torch.diagonal(K).clone()
    scale = float(diag.max()) if n > 0 else 0.
    L = torch.zeros(n, count, dtype=K.dtype)
    pivots = []
    for r in range(count):
        # ties go to the smallest index
        j = int(torch.argmax(diag))
        piv = float(diag[j])
        if piv <= eps * scale or piv <= 0.:
            break
        pivots.append(j)
        col = (K[:, j] - L[:, :r] @ L[j, :r]) / piv ** 0.5
        L[:, r] = col
        diag = diag - col ** 2
        diag[pivots] = -float('inf')
    return pivots, L[:, :len(pivots)]
