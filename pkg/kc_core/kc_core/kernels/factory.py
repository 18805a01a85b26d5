# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
import json

from kc_core.errors import UsageError

from .base import Kernel
from .builtin import ConstantKernel, DeltaKernel, FeatureMapKernel, LinearKernel, PolynomialNoConstKernel
from .calculus import extended, kernel_sum, minus_constant, plus_constant, squared, y_weighted

_META_KEYS = ("dim_rkhs", "sup_bound", "lipschitz")


def kernel_from_config(cfg) -> Kernel:
    """ Builds a kernel from {"kind": ..., "params": {...}} (a dict or a JSON string). """
    if isinstance(cfg, str):
        try:
            cfg = json.loads(cfg)
        except json.JSONDecodeError as e:
            raise UsageError(f"Kernel config is not valid JSON: {e}")
    if not isinstance(cfg, dict) or "kind" not in cfg:
        raise UsageError("Kernel config needs a 'kind' field")
    kind = cfg["kind"]
    params = dict(cfg.get("params", {}) or {})
    meta = {k: params.pop(k) for k in _META_KEYS if k in params}
    try:
        if kind == "poly_no_const":
            return PolynomialNoConstKernel(int(params["degree"]), **meta)
        if kind == "linear":
            return LinearKernel(**meta)
        if kind == "delta":
            return DeltaKernel(params.get("num_labels"), **meta)
        if kind == "constant":
            return ConstantKernel(float(params.get("value", 1.)), **meta)
        if kind == "feature_map":
            return FeatureMapKernel.from_basis(params.get("basis", "identity"), params.get("degrees", [1]),
                                               int(params.get("input_dim", 1)), params.get("coefficients"), **meta)
        if kind == "plus_constant":
            return plus_constant(kernel_from_config(params["base"]), bool(params.get("const_outside", True)))
        if kind == "minus_constant":
            return minus_constant(kernel_from_config(params["base"]), float(params["c_sq"]))
        if kind == "squared":
            return squared(kernel_from_config(params["base"]))
        if kind == "y_weighted":
            return y_weighted(kernel_from_config(params["base"]))
        if kind == "extended":
            return extended(kernel_from_config(params["base"]))
        if kind == "sum":
            return kernel_sum(*[kernel_from_config(t) for t in params["terms"]])
    except KeyError as e:
        raise UsageError(f"Kernel config for '{kind}' is missing parameter {e}")
    except ValueError as e:
        if isinstance(e, UsageError):
            raise
        raise UsageError(f"Bad kernel config for '{kind}': {e}")
    raise UsageError(f"Unknown kernel kind '{kind}'")
