# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

import pytest
import torch

from kc_core.kernels import PointSet
from kernel_compress.utils.helpers import SEED_ENV


@pytest.fixture(autouse=True)
def float64(monkeypatch):
    monkeypatch.delenv(SEED_ENV, raising=False)
    previous = torch.get_default_dtype()
    torch.set_default_dtype(torch.float64)
    yield
    torch.set_default_dtype(previous)


@pytest.fixture
def generator():
    return torch.Generator().manual_seed(1234)


@pytest.fixture
def write_points(tmp_path):
    """ Writes a PointSet CSV into tmp_path and returns its path. """
    def _write(name, points, labels=None):
        path = tmp_path / name
        PointSet(torch.as_tensor(points, dtype=torch.float64), labels).write_csv(str(path))
        return str(path)
    return _write
