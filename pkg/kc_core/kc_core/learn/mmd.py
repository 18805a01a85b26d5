# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import torch

from kc_core.algorithms import error_sq, frank_wolfe
from kc_core.errors import UsageError
from kc_core.kernels import Kernel, PointSet
from kc_core.storage import Coreset

logger = logging.getLogger(__name__)


class MMDMode(str, Enum):
    Exact = "Exact"
    Compressed = "Compressed"
    Hierarchical = "Hierarchical"


@dataclass(frozen=True)
class MMDResult:
    mmd_sq: float
    mode: MMDMode
    error_budget: Optional[float] = None

    def to_dict(self) -> dict:
        out = {"mmd_sq": self.mmd_sq, "mode": MMDMode(self.mode).value}
        if self.error_budget is not None:
            out["error_budget"] = self.error_budget
        return out


def _check_dims(a: PointSet, b: PointSet):
    if a.dim != b.dim:
        raise UsageError(f"Samples live in R^{a.dim} and R^{b.dim}")


def weighted_mmd_sq(kernel: Kernel, XA, wA, XB, wB) -> float:
    aa = float(wA @ kernel(XA, XA) @ wA)
    bb = float(wB @ kernel(XB, XB) @ wB)
    ab = float(wA @ kernel(XA, XB) @ wB)
    return max(aa + bb - 2. * ab, 0.)


def mmd_sq(kernel: Kernel, points_a: PointSet, points_b: PointSet) -> MMDResult:
    """ ||m_A - m_B||^2 from the three mean Gram sums. """
    _check_dims(points_a, points_b)
    wA = torch.full((points_a.n,), 1. / points_a.n, dtype=torch.float64)
    wB = torch.full((points_b.n,), 1. / points_b.n, dtype=torch.float64)
    return MMDResult(weighted_mmd_sq(kernel, points_a.points, wA, points_b.points, wB), MMDMode.Exact)


def _coreset_atoms(coreset: Coreset, points: PointSet):
    if coreset.n_source != points.n:
        raise UsageError(f"Coreset refers to {coreset.n_source} points, sample has {points.n}")
    return points.points[torch.tensor(coreset.indices, dtype=torch.long)], coreset.weights


def mmd_sq_compressed(kernel: Kernel, coreset_a: Coreset, points_a: PointSet,
                      coreset_b: Coreset, points_b: PointSet, mode=MMDMode.Compressed) -> MMDResult:
    """ MMD between the two coreset embeddings.

    error_budget = sqrt(err_A) + sqrt(err_B) bounds |sqrt(compressed) - sqrt(exact)| by the triangle inequality.
    """
    _check_dims(points_a, points_b)
    XA, wA = _coreset_atoms(coreset_a, points_a)
    XB, wB = _coreset_atoms(coreset_b, points_b)
    value = weighted_mmd_sq(kernel, XA, wA, XB, wB)
    budget = math.sqrt(error_sq(kernel, coreset_a, points_a)) + math.sqrt(error_sq(kernel, coreset_b, points_b))
    return MMDResult(value, MMDMode(mode), budget)


def hierarchical_compress(kernel: Kernel, points: PointSet, batch_size: Optional[int] = None,
                          per_batch_T: Optional[int] = None, final_T: Optional[int] = None) -> Coreset:
    """ Two-stage compression: Frank-Wolfe on consecutive batches, then on the merged atoms.

    Defaults are ceil(sqrt(n)) points per batch and ceil(log2 n) steps per batch and for the final pass.
    Batch coresets are merged with weights proportional to batch sizes, in batch order. The returned
    coreset indexes the original sample; `meta["stage_errors"]` holds the stagewise error budgets.
    """
    n = points.n
    log_n = max(math.ceil(math.log2(n)), 1) if n > 1 else 1
    batch_size = math.ceil(math.sqrt(n)) if batch_size is None else int(batch_size)
    per_batch_T = log_n if per_batch_T is None else int(per_batch_T)
    final_T = log_n if final_T is None else int(final_T)
    if batch_size < 1 or per_batch_T < 1 or final_T < 1:
        raise UsageError("batch_size, per_batch_T and final_T must be at least 1")

    if batch_size >= n:
        coreset, _ = frank_wolfe(kernel, points, final_T)
        coreset.meta["stage_errors"] = {"batches": 0., "recompress": math.sqrt(error_sq(kernel, coreset, points))}
        return coreset

    merged = {}
    batch_budget = 0.
    for start in range(0, n, batch_size):
        idx = list(range(start, min(start + batch_size, n)))
        batch = points.subset(idx)
        local, _ = frank_wolfe(kernel, batch, per_batch_T)
        share = len(idx) / n
        batch_budget += share * math.sqrt(error_sq(kernel, local, batch))
        for i, w in zip(local.indices, local.weights.tolist()):
            merged[idx[i]] = merged.get(idx[i], 0.) + share * w
        logger.debug("hierarchical_compress: batch at %d kept %d atoms", start, local.size)

    atoms = list(merged.keys())
    atom_weights = torch.tensor(list(merged.values()), dtype=torch.float64)
    atom_points = points.subset(atoms)
    final, _ = frank_wolfe(kernel, atom_points, final_T, target_weights=atom_weights / atom_weights.sum())
    recompress = math.sqrt(max(weighted_mmd_sq(kernel, atom_points.points[final.indices], final.weights,
                                               atom_points.points, atom_weights / atom_weights.sum()), 0.))
    coreset = Coreset([atoms[i] for i in final.indices], final.weights, n, kernel=kernel.to_dict(), points_id=points.id)
    coreset.meta["stage_errors"] = {"batches": batch_budget, "recompress": recompress}
    logger.info("hierarchical_compress: %d batches, %d merged atoms, %d final", math.ceil(n / batch_size),
                len(atoms), coreset.size)
    return coreset
