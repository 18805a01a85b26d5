# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
import csv

import torch


class CompressionTrace:
    """ Per-iteration record of a compression run: chosen index, step size and squared error. """
    class Step:
        def __init__(self):
            self.chosen_index = None
            self.step_size = None
            self.error_sq = None
            self.tie = False

        def clear(self):
            self.__init__()

    def __init__(self, num_iterations: int):
        self.num_iterations = num_iterations
        self.chosen_index = torch.zeros(num_iterations, dtype=torch.long)
        self.step_size = torch.zeros(num_iterations, dtype=torch.float64)
        self.error_sq = torch.zeros(num_iterations, dtype=torch.float64)
        # set where a negative error_sq from cancellation was clipped to 0
        self.clipped = torch.zeros(num_iterations, dtype=torch.bool)
        self.ties = torch.zeros(num_iterations, dtype=torch.bool)
        self.step = 0

    def add_step(self, step: "CompressionTrace.Step"):
        if self.step >= self.num_iterations:
            raise AssertionError("Compression trace overflow")
        error_sq = float(step.error_sq)
        if error_sq < 0.:
            self.clipped[self.step] = True
            error_sq = 0.
        self.chosen_index[self.step] = int(step.chosen_index)
        self.step_size[self.step] = float(step.step_size)
        self.error_sq[self.step] = error_sq
        self.ties[self.step] = bool(step.tie)
        self.step += 1

    def truncate(self):
        """ Drops the unused tail after an early stop. """
        self.num_iterations = self.step
        for name in ("chosen_index", "step_size", "error_sq", "clipped", "ties"):
            setattr(self, name, getattr(self, name)[:self.step])

    def __len__(self):
        return self.step

    def rows(self):
        for t in range(self.step):
            yield t + 1, int(self.chosen_index[t]), float(self.step_size[t]), float(self.error_sq[t])

    def write_csv(self, path: str):
        with open(path, "w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(["t", "chosen_index", "step", "error_sq"])
            for t, i, s, e in self.rows():
                writer.writerow([t, i, repr(s), repr(e)])
