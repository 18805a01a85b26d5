# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
import logging
import os
import time

from torch.utils.tensorboard import SummaryWriter

from kc_core.algorithms import FrankWolfe, KernelHerding, epsnet_compress, make_oracle
from kc_core.errors import UsageError
from kc_core.kernels import Kernel, PointSet

logger = logging.getLogger(__name__)

ALGORITHMS = {"herd": KernelHerding, "fw": FrankWolfe, "frank_wolfe": FrankWolfe}


class CompressionRunner:
    """ Drives one compression algorithm from a config dict, logging every iteration. """

    def __init__(self, kernel: Kernel, points: PointSet, compress_cfg: dict, log_dir=None, device='cpu'):
        self.cfg = compress_cfg["runner"]
        self.alg_cfg = compress_cfg["algorithm"]
        self.kernel = kernel
        self.points = points
        self.device = device
        self.name = self.alg_cfg["name"]
        if self.name not in ALGORITHMS and self.name != "epsnet":
            raise UsageError(f"Unknown compression algorithm '{self.name}', expected herd, fw or epsnet")
        self.num_iterations = int(self.alg_cfg.get("T", 1))
        if self.name != "epsnet" and self.num_iterations < 1:
            raise UsageError(f"T must be at least 1, got {self.num_iterations}")
        self.verbose = bool(self.cfg.get("verbose", False))
        self.print_interval = max(int(self.cfg.get("print_interval", 100)), 1)

        # Log
        self.log_dir = log_dir
        self.writer = None
        self.tot_time = 0.
        self.alg = None

    def run(self):
        """ Returns (coreset, trace); the trace is None for the eps-net baseline. """
        if self.name == "epsnet":
            eps = self.alg_cfg.get("eps")
            if eps is None:
                raise UsageError("epsnet needs eps")
            return epsnet_compress(self.points, float(eps), self.kernel), None

        if self.log_dir is not None and self.writer is None:
            os.makedirs(self.log_dir, exist_ok=True)
            self.writer = SummaryWriter(log_dir=self.log_dir, flush_secs=10)

        oracle = make_oracle(self.kernel, self.points, bool(self.alg_cfg.get("streaming", False)))
        alg_class = ALGORITHMS[self.name]
        if alg_class is KernelHerding:
            self.alg = KernelHerding(oracle, int(self.alg_cfg.get("init_index", 0)))
        else:
            self.alg = FrankWolfe(oracle)
        self.alg.init_storage(self.num_iterations)

        for it in range(1, self.num_iterations + 1):
            start = time.time()
            record = self.alg.step()
            iteration_time = time.time() - start
            if record is None:
                logger.info("%s stopped after %d iterations: zero search direction", self.name, it - 1)
                break
            self.log(locals())

        trace = self.alg.storage
        trace.truncate()
        if trace.clipped.any():
            logger.warning("%d negative squared errors clipped to 0", int(trace.clipped.sum()))
        if self.writer is not None:
            self.writer.flush()
        coreset = self.alg.coreset(kernel=self.kernel.to_dict(), points_id=self.points.id)
        return coreset, trace

    def log(self, locs, width=80, pad=35):
        self.tot_time += locs['iteration_time']
        record = locs['record']
        it = locs['it']
        if self.writer is not None:
            self.writer.add_scalar('Compression/error_sq', record.error_sq, it)
            self.writer.add_scalar('Compression/step', record.step_size, it)
            self.writer.add_scalar('Compression/chosen_index', record.chosen_index, it)
            self.writer.add_scalar('Perf/iteration_time', locs['iteration_time'], it)
        if not self.verbose or (it % self.print_interval != 0 and it != self.num_iterations):
            return

        title = f" \033[1m Compression iteration {it}/{self.num_iterations} \033[0m "
        log_string = (f"""{'#' * width}\n"""
                      f"""{title.center(width, ' ')}\n\n"""
                      f"""{'Algorithm:':>{pad}} {self.name}\n"""
                      f"""{'Chosen index:':>{pad}} {record.chosen_index}\n"""
                      f"""{'Step size:':>{pad}} {record.step_size:.6f}\n"""
                      f"""{'Squared error:':>{pad}} {record.error_sq:.6e}\n"""
                      f"""{'-' * width}\n"""
                      f"""{'Total time:':>{pad}} {self.tot_time:.2f}s\n""")
        print(log_string)
