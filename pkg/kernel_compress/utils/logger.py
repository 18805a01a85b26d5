# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

from collections import defaultdict

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


class Logger:
    """ Collects named series and renders them to PNG files. """

    def __init__(self):
        self.state_log = defaultdict(list)

    def log_state(self, key, value):
        self.state_log[key].append(value)

    def log_states(self, dict):
        for key, value in dict.items():
            self.log_state(key, value)

    def plot_constant_approx(self, path):
        """ Lower bound and achieved approximation error against d. """
        log = self.state_log
        fig, a = plt.subplots(1, 1, figsize=(5, 4))
        if log["d"]:
            a.plot(log["d"], log["achieved_error"], 'o-', color='tab:orange', label='achieved error')
            a.plot(log["d"], log["lower_bound"], 's-', color='tab:blue', label='lower bound')
        a.set(xlabel='d', ylabel='sup-norm error', title='Approximation of constants')
        a.set_xticks(log["d"])
        a.legend()
        fig.tight_layout()
        fig.savefig(path, dpi=120)
        plt.close(fig)

    def plot_coefficient_profile(self, tables, path):
        """ |<e_n, w_t>| per n, one curve per m, with the lower bounds dashed. """
        fig, a = plt.subplots(1, 1, figsize=(6, 4))
        for m, rows in tables.items():
            if not rows:
                continue
            rows = np.array(rows, dtype=float)
            line, = a.plot(rows[:, 0], rows[:, 1], '-', label=f'm={m}')
            keep = rows[:, 2] > 0.
            if keep.any():
                a.plot(rows[keep, 0], rows[keep, 2], '--', color=line.get_color())
        a.set_yscale('symlog', linthresh=1e-3)
        a.set(xlabel='n', ylabel='|<e_n, w_t>|', title='Coefficients when a_m is chosen')
        a.legend()
        fig.tight_layout()
        fig.savefig(path, dpi=120)
        plt.close(fig)

    def plot_trace(self, path, key="error_sq", ylabel="squared error"):
        log = self.state_log
        fig, a = plt.subplots(1, 1, figsize=(5, 4))
        if log[key]:
            t = np.arange(1, len(log[key]) + 1)
            a.plot(t, np.maximum(np.asarray(log[key], dtype=float), 1e-300), label=key)
            a.set_xscale('log')
            a.set_yscale('log')
        a.set(xlabel='t', ylabel=ylabel)
        a.legend()
        fig.tight_layout()
        fig.savefig(path, dpi=120)
        plt.close(fig)
