# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

import logging
import os
import time

from kernel_compress.utils.helpers import class_to_dict, make_generator, write_csv, write_json

logger = logging.getLogger(__name__)


# Base class for acceptance cases
class BaseCase():
    """ One acceptance criterion: compute, check and write the artifacts.

    Subclasses implement `compute()`, which fills `self.metrics` and `self.tables` and returns
    whether the criterion holds. Tables are written as `<name>.csv`, the result as `<case>.json`.
    """

    def __init__(self, name, cfg, out_dir=None, plot=False):
        self.name = name
        self.cfg = cfg
        self.seed = cfg.seed
        self.out_dir = out_dir
        self.plot = plot
        self.generator = make_generator(self.seed)
        self.budget_s = getattr(cfg.case, "budget_s", None)

        self.metrics = {}
        self.tables = {}
        self.plots = []
        self.result = None
        self.written = []

    def compute(self) -> bool:
        raise NotImplementedError

    def render(self, out_dir):
        """ Optional PNG output; never part of the compared artifacts. """
        return []

    def run(self) -> dict:
        start = time.time()
        passed = bool(self.compute())
        elapsed = time.time() - start
        if self.budget_s is not None and elapsed > self.budget_s:
            logger.warning("case %s took %.1fs, budget %.0fs", self.name, elapsed, self.budget_s)
        else:
            logger.info("case %s took %.2fs", self.name, elapsed)
        self.result = {
            "case": self.name,
            "passed": passed,
            "seed": self.seed,
            "config": class_to_dict(self.cfg.case),
            "metrics": self.metrics,
        }
        if self.out_dir is not None:
            self.write(self.out_dir)
        return self.result

    def write(self, out_dir):
        os.makedirs(out_dir, exist_ok=True)
        written = []
        for table, (header, rows) in self.tables.items():
            path = os.path.join(out_dir, f"{table}.csv")
            write_csv(path, header, rows)
            written.append(path)
        path = os.path.join(out_dir, f"{self.name}.json")
        write_json(self.result, path)
        written.append(path)
        if self.plot:
            self.plots = self.render(out_dir)
        self.written = written
        return written
