# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
from typing import Tuple

from kc_core.algorithms import frank_wolfe, herd
from kc_core.errors import UsageError
from kc_core.kernels import Kernel, PointSet, extended, kernel_sum, label_product, y_weighted
from kc_core.storage import CompressionTrace, Coreset

COMPRESSORS = {"herd": herd, "fw": frank_wolfe, "frank_wolfe": frank_wolfe}


def simultaneous_kernel(kernel: Kernel, with_ysq: bool = False) -> Kernel:
    """ Direct-sum kernel on augmented points (y, x): extended(k) + y_weighted(k), optionally + y1 y2. """
    terms = [extended(kernel), y_weighted(kernel)]
    if with_ysq:
        terms.append(label_product())
    return kernel_sum(*terms)


def simultaneous_coreset_with_trace(kernel: Kernel, points: PointSet, T: int, algo: str = "herd",
                                    with_ysq: bool = False) -> Tuple[Coreset, CompressionTrace]:
    if points.labels is None:
        raise UsageError("simultaneous_coreset needs labelled points")
    if algo not in COMPRESSORS:
        raise UsageError(f"Unknown compression algorithm '{algo}', expected herd or fw")
    return COMPRESSORS[algo](simultaneous_kernel(kernel, with_ysq), points.augmented(), T)


def simultaneous_coreset(kernel: Kernel, points: PointSet, T: int, algo: str = "herd",
                         with_ysq: bool = False) -> Coreset:
    """ One coreset approximating the covariance-like operator and the label-weighted mean together. """
    return simultaneous_coreset_with_trace(kernel, points, T, algo, with_ysq)[0]
