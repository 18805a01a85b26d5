# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

from .base_config import BaseConfig


class CompressCfg(BaseConfig):
    seed = 0

    class kernel:
        kind = 'linear'
        params = {}

    class algorithm:
        name = 'herd'  # herd, fw or epsnet
        T = 100
        eps = None  # epsnet only
        init_index = 0
        streaming = False  # Gram rows on demand instead of the dense matrix
        simultaneous = False  # compress (y, x) with the direct-sum kernel
        with_ysq = False

    class runner:
        experiment_name = 'compress'
        log_dir = None  # tensorboard event files when set
        verbose = False
        print_interval = 100
        device = 'cpu'


class KrrCfg(BaseConfig):
    seed = 0

    class kernel:
        kind = None  # None: take the kernel stored with the coreset
        params = {}

    class regression:
        lam = 1e-3
        mode = 'sub'  # sub or min
        regularizer = 'weights'  # weights: lambda W^-1, identity: lambda I


class MmdCfg(BaseConfig):
    seed = 0

    class kernel:
        kind = 'linear'
        params = {}

    class compression:
        T = None  # None: exact MMD
        hierarchical = False
        batch_size = None
        per_batch_T = None


class DiagnoseCfg(BaseConfig):
    seed = 0

    class kernel:
        kind = 'linear'
        params = {}

    class bound:
        variant = 'kplus'  # kplus, kminus, mercer or kfunctional
        c_sq = None  # kminus; estimated from the points when None
        lambda_tilde = None  # mercer; estimated on the input grid when None
        contains_const = False
        select = None  # pick this many points by pivoted Cholesky first
        t = 1e-2  # kfunctional
        basis_size = 8

    class ball:
        q = None  # ball report only when set
        c_density = 1.
        L = 1.
        sup_k = None  # defaults to the largest Gram diagonal entry


class CounterexampleCfg(BaseConfig):
    seed = 0

    class run:
        T = 20000
        n_max = 40
        profile = [5, 10, 20]
        stop_at_boundary = False

    class measure:
        n_max = 20
