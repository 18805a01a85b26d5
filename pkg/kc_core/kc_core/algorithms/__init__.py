# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

from .oracle import GramOracle, StreamingGramOracle, make_oracle
from .herding import KernelHerding, herd
from .frank_wolfe import FrankWolfe, frank_wolfe
from .epsnet import EpsNet, build_epsnet, epsnet_compress, net_size, MAX_CENTERS
from .evaluation import error_sq, embedding_error_sq, near_mean_extremes
