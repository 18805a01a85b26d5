# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
import hashlib
import json
from typing import Optional

import torch

from kc_core.utils import as_points


def as_row(x) -> torch.Tensor:
    """ A single point as a (1, l) tensor. """
    t = torch.as_tensor(x, dtype=torch.float64)
    return t.reshape(1, -1)


class Kernel:
    """ Symmetric positive semi-definite kernel evaluated on batches of points.

    Subclasses implement `evaluate(X, Y)` for (n, l) and (m, l) float64 tensors and return the (n, m) matrix
    of kernel values. Metadata is advisory:
        dim_rkhs: dimension d of the RKHS when known
        sup_bound: bound on sqrt(k(x, x)) over the domain, so that k(x, x) <= sup_bound**2
        lipschitz: Lipschitz constant L of RKHS functions in the sense of the diameter theorems
    """
    kind = "kernel"

    def __init__(self, dim_rkhs: Optional[int] = None, sup_bound: Optional[float] = None, lipschitz: Optional[float] = None):
        self.dim_rkhs = dim_rkhs
        self.sup_bound = sup_bound
        self.lipschitz = lipschitz

    def evaluate(self, X: torch.Tensor, Y: torch.Tensor) -> torch.Tensor:
        raise NotImplementedError

    def __call__(self, X, Y=None) -> torch.Tensor:
        X = as_points(X)
        Y = X if Y is None else as_points(Y)
        return self.evaluate(X, Y)

    def eval(self, x, y) -> float:
        return float(self.evaluate(as_row(x), as_row(y))[0, 0])

    def diag(self, X) -> torch.Tensor:
        """ k(x_i, x_i) for every row, one pair at a time. """
        X = as_points(X)
        return torch.cat([self.evaluate(X[i:i + 1], X[i:i + 1]).reshape(1) for i in range(X.shape[0])])

    def params(self) -> dict:
        return {}

    def meta(self) -> dict:
        return {"dim_rkhs": self.dim_rkhs, "sup_bound": self.sup_bound, "lipschitz": self.lipschitz}

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": self.params()}

    @property
    def id(self) -> str:
        return hashlib.sha256(json.dumps(self.to_dict(), sort_keys=True).encode()).hexdigest()

    def __repr__(self):
        return f"{type(self).__name__}({self.params()})"
