# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
from typing import Callable, Optional, Sequence

import torch

from kc_core.utils import as_points

from .base import Kernel


class PolynomialNoConstKernel(Kernel):
    """ k_d(x, y) = sum_{u=1}^d <x, y>^u. On [-1, 1] this spans the monomials x, ..., x^d without the constants. """
    kind = "poly_no_const"

    def __init__(self, degree: int, **meta):
        if degree < 1:
            raise ValueError("degree must be >= 1")
        meta.setdefault("dim_rkhs", degree)
        meta.setdefault("sup_bound", float(degree) ** 0.5)
        meta.setdefault("lipschitz", float(degree * (degree + 1) * (2 * degree + 1) / 6) ** 0.5)
        super().__init__(**meta)
        self.degree = degree

    def evaluate(self, X, Y):
        G = X @ Y.T
        power = G
        out = G.clone()
        for _ in range(2, self.degree + 1):
            power = power * G
            out = out + power
        return out

    def params(self):
        return {"degree": self.degree}


class LinearKernel(Kernel):
    kind = "linear"

    def evaluate(self, X, Y):
        return X @ Y.T


class DeltaKernel(Kernel):
    """ 1 when the two points coincide coordinate-wise, else 0. Meant for finite label sets. """
    kind = "delta"

    def __init__(self, num_labels: Optional[int] = None, **meta):
        meta.setdefault("dim_rkhs", num_labels)
        meta.setdefault("sup_bound", 1.)
        super().__init__(**meta)
        self.num_labels = num_labels

    def evaluate(self, X, Y):
        return (X[:, None, :] == Y[None, :, :]).all(dim=-1).to(X.dtype)

    def params(self):
        return {} if self.num_labels is None else {"num_labels": self.num_labels}


class ConstantKernel(Kernel):
    """ k(x, y) = c. c = 0 gives the zero kernel. """
    kind = "constant"

    def __init__(self, value: float = 1., **meta):
        if value < 0:
            raise ValueError("a constant kernel needs value >= 0")
        meta.setdefault("dim_rkhs", 1 if value > 0 else 0)
        meta.setdefault("sup_bound", value ** 0.5)
        meta.setdefault("lipschitz", 0.)
        super().__init__(**meta)
        self.value = float(value)

    def evaluate(self, X, Y):
        return torch.full((X.shape[0], Y.shape[0]), self.value, dtype=X.dtype)

    def params(self):
        return {"value": self.value}


def _monomials(degrees):
    def phi(X):
        return torch.cat([X ** u for u in degrees], dim=1)
    return phi


def _trig(degrees):
    def phi(X):
        return torch.cat([f(u * X) for u in degrees for f in (torch.cos, torch.sin)], dim=1)
    return phi


class FeatureMapKernel(Kernel):
    """ k(x, y) = <phi(x), phi(y)> for an explicit feature map phi: R^l -> R^d.

    `coefficients` (r, d) mixes the basis features into r new features, phi'(x) = C phi(x).
    """
    kind = "feature_map"
    BASES = ("monomial", "identity", "trig")

    def __init__(self, phi: Callable[[torch.Tensor], torch.Tensor], dim: int, spec: Optional[dict] = None,
                 coefficients=None, **meta):
        self.coefficients = None if coefficients is None else torch.as_tensor(coefficients, dtype=torch.float64)
        if self.coefficients is not None:
            dim = self.coefficients.shape[0]
        meta.setdefault("dim_rkhs", dim)
        super().__init__(**meta)
        self.phi = phi
        self.dim = dim
        self.spec = spec if spec is not None else {"basis": "custom", "name": getattr(phi, "__name__", "phi")}

    @classmethod
    def from_basis(cls, basis: str = "identity", degrees: Sequence[int] = (1,), input_dim: int = 1,
                   coefficients=None, **meta):
        degrees = [int(u) for u in degrees]
        if basis == "identity":
            phi, dim = (lambda X: X), input_dim
        elif basis == "monomial":
            phi, dim = _monomials(degrees), input_dim * len(degrees)
        elif basis == "trig":
            phi, dim = _trig(degrees), 2 * input_dim * len(degrees)
        else:
            raise ValueError(f"Unknown feature basis '{basis}', expected one of {cls.BASES}")
        spec = {"basis": basis, "degrees": degrees, "input_dim": input_dim}
        if coefficients is not None:
            spec["coefficients"] = [[float(v) for v in row] for row in coefficients]
        return cls(phi, dim, spec=spec, coefficients=coefficients, **meta)

    def features(self, X) -> torch.Tensor:
        F = self.phi(as_points(X))
        if self.coefficients is not None:
            F = F @ self.coefficients.T
        return F

    def evaluate(self, X, Y):
        return self.features(X) @ self.features(Y).T

    def params(self):
        return dict(self.spec)
