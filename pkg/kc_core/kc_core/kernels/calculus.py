# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
from typing import Optional

from kc_core.errors import InvalidConstantError, PreconditionError
from kc_core.utils import min_eigenvalue, psd_tolerance

from .base import Kernel
from .builtin import ConstantKernel
from .gram import gram
from .point_set import PointSet


class PlusConstantKernel(Kernel):
    """ k+ = k + 1 (x) 1. The RKHS gains the constant function when it was not already in it. """
    kind = "plus_constant"

    def __init__(self, base: Kernel, const_outside: bool = True):
        dim = base.dim_rkhs
        if dim is not None and const_outside:
            dim = dim + 1
        sup = None if base.sup_bound is None else (base.sup_bound ** 2 + 1.) ** 0.5
        super().__init__(dim_rkhs=dim, sup_bound=sup, lipschitz=base.lipschitz)
        self.base = base
        self.const_outside = const_outside

    def evaluate(self, X, Y):
        return self.base.evaluate(X, Y) + 1.

    def params(self):
        return {"base": self.base.to_dict(), "const_outside": self.const_outside}


class MinusConstantKernel(Kernel):
    """ k- = k - c^2 1 (x) 1, the kernel of the orthogonal complement of the constants. """
    kind = "minus_constant"

    def __init__(self, base: Kernel, c_sq: float):
        dim = base.dim_rkhs
        if dim is not None and c_sq > 0:
            dim = dim - 1
        super().__init__(dim_rkhs=dim, sup_bound=base.sup_bound, lipschitz=base.lipschitz)
        self.base = base
        self.c_sq = float(c_sq)

    def evaluate(self, X, Y):
        return self.base.evaluate(X, Y) - self.c_sq

    def params(self):
        return {"base": self.base.to_dict(), "c_sq": self.c_sq}


class SquaredKernel(Kernel):
    """ kappa(x, y) = k(x, y)^2, the kernel of the symmetric tensor product space. """
    kind = "squared"

    def __init__(self, base: Kernel):
        sup = None if base.sup_bound is None else base.sup_bound ** 2
        super().__init__(sup_bound=sup)
        self.base = base

    def evaluate(self, X, Y):
        return self.base.evaluate(X, Y) ** 2

    def params(self):
        return {"base": self.base.to_dict()}


class YWeightedKernel(Kernel):
    """ k_y((y1, x1), (y2, x2)) = y1 y2 k(x1, x2) on augmented points with the label in column 0. """
    kind = "y_weighted"

    def __init__(self, base: Kernel):
        super().__init__(dim_rkhs=base.dim_rkhs)
        self.base = base

    def evaluate(self, X, Y):
        return self.base.evaluate(X[:, 1:], Y[:, 1:]) * X[:, :1] * Y[:, 0].unsqueeze(0)

    def params(self):
        return {"base": self.base.to_dict()}


class ExtendedKernel(Kernel):
    """ kappa_y((y1, x1), (y2, x2)) = k(x1, x2)^2, ignoring the label column. """
    kind = "extended"

    def __init__(self, base: Kernel):
        self.squared = SquaredKernel(base)
        super().__init__(sup_bound=self.squared.sup_bound)
        self.base = base

    def evaluate(self, X, Y):
        return self.squared.evaluate(X[:, 1:], Y[:, 1:])

    def params(self):
        return {"base": self.base.to_dict()}


class SumKernel(Kernel):
    kind = "sum"

    def __init__(self, *terms: Kernel):
        if not terms:
            raise ValueError("A sum kernel needs at least one term")
        sup = None
        if all(t.sup_bound is not None for t in terms):
            sup = sum(t.sup_bound ** 2 for t in terms) ** 0.5
        lip = None
        if all(t.lipschitz is not None for t in terms):
            lip = sum(t.lipschitz ** 2 for t in terms) ** 0.5
        super().__init__(sup_bound=sup, lipschitz=lip)
        self.terms = terms

    def evaluate(self, X, Y):
        out = self.terms[0].evaluate(X, Y)
        for t in self.terms[1:]:
            out = out + t.evaluate(X, Y)
        return out

    def params(self):
        return {"terms": [t.to_dict() for t in self.terms]}


def zero_kernel() -> Kernel:
    return ConstantKernel(0.)


def plus_constant(kernel: Kernel, const_outside: bool = True) -> Kernel:
    return PlusConstantKernel(kernel, const_outside)


def minus_constant(kernel: Kernel, c_sq: float, grid: Optional[PointSet] = None) -> Kernel:
    """ Removes c_sq * 1 (x) 1 from the kernel, c_sq = 1 / ||1||^2 (see estimate_const_norm).

    When a validation grid is given the resulting Gram matrix must be PSD up to 1e-8 * trace.
    """
    if c_sq < 0:
        raise PreconditionError(f"c_sq must be >= 0, got {c_sq}")
    if c_sq == 0:
        return kernel
    out = MinusConstantKernel(kernel, c_sq)
    if grid is not None:
        K = gram(out, grid).entries
        lam = min_eigenvalue(K)
        if lam < -psd_tolerance(K):
            raise InvalidConstantError(
                f"k - {c_sq} is not positive semi-definite on the validation grid (smallest eigenvalue {lam:.3e})")
    return out


def squared(kernel: Kernel) -> Kernel:
    return SquaredKernel(kernel)


def y_weighted(kernel: Kernel) -> Kernel:
    return YWeightedKernel(kernel)


def extended(kernel: Kernel) -> Kernel:
    return ExtendedKernel(kernel)


def kernel_sum(*kernels: Kernel) -> Kernel:
    return SumKernel(*kernels)


def label_product() -> Kernel:
    """ l((y1, x1), (y2, x2)) = y1 y2, which carries sum y_i^2 through a coreset. """
    return YWeightedKernel(ConstantKernel(1.))
