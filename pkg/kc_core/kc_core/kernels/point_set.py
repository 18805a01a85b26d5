# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
import csv
import os
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import torch

from kc_core.errors import UsageError
from kc_core.utils import as_points, as_vector, tensor_digest


@dataclass(frozen=True, eq=False)
class PointSet:
    """ n sample points in R^l with optional labels y and an optional axis-aligned domain box. """
    points: torch.Tensor
    labels: Optional[torch.Tensor] = None
    domain_box: Optional[Tuple[torch.Tensor, torch.Tensor]] = None

    def __post_init__(self):
        points = as_points(self.points)
        if points.shape[0] < 1:
            raise UsageError("A point set needs at least one point")
        if not torch.isfinite(points).all():
            raise UsageError("All point coordinates must be finite")
        object.__setattr__(self, "points", points)
        if self.labels is not None:
            labels = as_vector(self.labels)
            if labels.shape[0] != points.shape[0]:
                raise UsageError(f"Got {labels.shape[0]} labels for {points.shape[0]} points")
            if not torch.isfinite(labels).all():
                raise UsageError("All labels must be finite")
            object.__setattr__(self, "labels", labels)
        if self.domain_box is not None:
            lo, hi = (as_vector(b).expand(points.shape[1]).clone() for b in self.domain_box)
            if (hi < lo).any():
                raise UsageError("domain_box needs lo <= hi in every coordinate")
            object.__setattr__(self, "domain_box", (lo, hi))

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def id(self) -> str:
        return tensor_digest(self.points, self.labels)

    def box(self) -> Tuple[torch.Tensor, torch.Tensor]:
        """ The domain box, or the bounding box of the points when none was given. """
        if self.domain_box is not None:
            return self.domain_box
        return self.points.min(dim=0).values, self.points.max(dim=0).values

    def subset(self, indices: Sequence[int]) -> "PointSet":
        idx = torch.as_tensor(list(indices), dtype=torch.long)
        labels = None if self.labels is None else self.labels[idx]
        return PointSet(self.points[idx], labels, self.domain_box)

    def augmented(self) -> "PointSet":
        """ Points (y_i, x_i) with the label in column 0, the input of the y-dependent kernels. """
        if self.labels is None:
            raise UsageError("Augmented points need labels")
        return PointSet(torch.cat([self.labels.unsqueeze(1), self.points], dim=1), self.labels)

    @classmethod
    def read_csv(cls, path: str, domain_box=None) -> "PointSet":
        if not os.path.isfile(path):
            raise FileNotFoundError(path)
        with open(path, newline="") as f:
            reader = csv.reader(f)
            try:
                header = [h.strip() for h in next(reader)]
            except StopIteration:
                raise UsageError(f"{path}: empty file")
            has_y = header[-1] == "y"
            xcols = header[:-1] if has_y else header
            if not xcols or xcols != [f"x{i + 1}" for i in range(len(xcols))]:
                raise UsageError(f"{path}: header must be x1,...,xl[,y], got {','.join(header)}")
            rows = []
            for lineno, row in enumerate(reader, start=2):
                if not row:
                    continue
                if len(row) != len(header):
                    raise UsageError(f"{path}:{lineno}: expected {len(header)} fields, got {len(row)}")
                try:
                    rows.append([float(v) for v in row])
                except ValueError as e:
                    raise UsageError(f"{path}:{lineno}: {e}")
        if not rows:
            raise UsageError(f"{path}: no data rows")
        data = torch.tensor(rows, dtype=torch.float64)
        labels = data[:, -1] if has_y else None
        points = data[:, :-1] if has_y else data
        return cls(points, labels, domain_box)

    def write_csv(self, path: str):
        header = [f"x{i + 1}" for i in range(self.dim)] + (["y"] if self.labels is not None else [])
        with open(path, "w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            for i in range(self.n):
                row = [repr(float(v)) for v in self.points[i]]
                if self.labels is not None:
                    row.append(repr(float(self.labels[i])))
                writer.writerow(row)
