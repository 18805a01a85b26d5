# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
import json
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import List, Sequence

import torch

from kc_core.errors import UsageError

SIMPLEX_TOL = 1e-12


@dataclass(eq=False)
class Coreset:
    """ Weighted selection of sample indices. Herding coresets keep duplicates with weight 1/T each. """
    indices: List[int]
    weights: torch.Tensor
    n_source: int
    kernel: dict = field(default_factory=dict)
    points_id: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.indices = [int(i) for i in self.indices]
        self.weights = torch.as_tensor(self.weights, dtype=torch.float64).reshape(-1)
        if len(self.indices) != self.weights.shape[0]:
            raise UsageError(f"{len(self.indices)} indices but {self.weights.shape[0]} weights")
        if not self.indices:
            raise UsageError("A coreset needs at least one atom")
        if any(i < 0 or i >= self.n_source for i in self.indices):
            raise UsageError(f"Coreset indices must lie in [0, {self.n_source})")
        if (self.weights < 0).any():
            raise UsageError("Coreset weights must be non-negative")
        total = float(self.weights.sum())
        if abs(total - 1.) > SIMPLEX_TOL:
            if total <= 0.:
                raise UsageError("Coreset weights sum to zero")
            self.weights = self.weights / total

    @classmethod
    def uniform(cls, indices: Sequence[int], n_source: int, **kwargs) -> "Coreset":
        return cls(list(indices), torch.full((len(indices),), 1. / len(indices), dtype=torch.float64), n_source, **kwargs)

    @property
    def size(self) -> int:
        return len(self.indices)

    def compact(self) -> "Coreset":
        """ Merges duplicate indices by summing their weights, keeping first-occurrence order. """
        merged = OrderedDict()
        for i, w in zip(self.indices, self.weights.tolist()):
            merged[i] = merged.get(i, 0.) + w
        return Coreset(list(merged.keys()), torch.tensor(list(merged.values()), dtype=torch.float64),
                       self.n_source, self.kernel, self.points_id, dict(self.meta))

    def to_dict(self) -> dict:
        out = {"indices": self.indices, "weights": [float(w) for w in self.weights], "kernel": self.kernel,
               "n_source": self.n_source}
        if self.points_id:
            out["points_id"] = self.points_id
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "Coreset":
        try:
            return cls(d["indices"], d["weights"], int(d["n_source"]), d.get("kernel", {}), d.get("points_id", ""))
        except KeyError as e:
            raise UsageError(f"Coreset JSON is missing field {e}")

    def save(self, path: str):
        with open(path, "w") as f:
            json.dump(self.to_dict(), f, indent=2, sort_keys=True)
            f.write("\n")

    @classmethod
    def load(cls, path: str) -> "Coreset":
        with open(path) as f:
            return cls.from_dict(json.load(f))
