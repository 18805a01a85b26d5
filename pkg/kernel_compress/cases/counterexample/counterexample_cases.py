# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

import logging
import os

from kc_core.counterexample import (SCALE, AtomKind, build_atoms, divergence_check, coefficient_profile, measure_mean_check,
                                    n_count, run, trace_to_rows, verify_invariants)

from kernel_compress.cases.base.base_case import BaseCase
from kernel_compress.utils.logger import Logger

logger = logging.getLogger(__name__)


def record_steps(trace):
    """ Steps t at which ||w_t||^2 exceeds every earlier value. """
    best = float("-inf")
    steps = []
    for t, value in enumerate(trace, start=1):
        if value > best:
            best = value
            steps.append(t)
    return steps


class CounterexampleCase(BaseCase):
    """ Herding on the divergent construction: constants, step-wise invariants, the norm bound and the record trace. """

    def compute(self):
        c = self.cfg.case
        atoms = build_atoms(c.n_max)
        constants_ok = SCALE == c.scale and n_count(2) == c.n_count_2
        state = run(atoms, c.T)
        invariants = verify_invariants(state)
        divergence = divergence_check(state)

        trace = state.norm_sq_trace
        records = record_steps(trace)
        half = len(trace) // 2
        # the second half of the horizon sets a new maximum
        late_record = records[-1] > half

        a_steps = [t for t, (kind, _, _) in enumerate(state.chosen_log, start=1) if kind == AtomKind.A]
        reachable = [m for m in c.profile if m <= len(a_steps)]
        if len(reachable) < len(c.profile):
            logger.warning("a_m for m in %s not chosen within %d steps", sorted(set(c.profile) - set(reachable)), state.t)
        self.profile = coefficient_profile(state, reachable)

        self.tables["trace"] = (["t", "kind", "n", "i", "norm_sq"], trace_to_rows(state))
        for m, rows in self.profile.items():
            self.tables[f"profile_m{m}"] = (["n", "abs_coef", "lower_bound"], rows)
        self.metrics = {
            "constants_ok": constants_ok,
            "invariants": {k: invariants[k] for k in ("ok", "checked", "a_horizon", "first_violation")},
            "ties": len(invariants["ties"]),
            "divergence": {k: divergence[k] for k in ("ok", "max_norm", "max_norm_sq", "final_norm_sq", "positive_from_n",
                                                      "first_violation")},
            "record_steps": len(records),
            "last_record": records[-1],
            "profile_m": reachable,
        }
        return constants_ok and invariants["ok"] and divergence["ok"] and late_record

    def render(self, out_dir):
        profile_png = os.path.join(out_dir, "coefficient_profile.png")
        Logger().plot_coefficient_profile(self.profile, profile_png)
        trace_log = Logger()
        for row in self.tables["trace"][1]:
            trace_log.log_state("norm_sq", row[4])
        norm = os.path.join(out_dir, "counterexample_norm.png")
        trace_log.plot_trace(norm, key="norm_sq", ylabel="||w_t||^2")
        return [profile_png, norm]


class MeasureCheckCase(BaseCase):
    """ The truncated mean embedding of the constructed measure vanishes coordinate-wise. """

    def compute(self):
        report = measure_mean_check(self.cfg.case.n_max)
        self.tables["measure_coordinates"] = (["coordinate", "value"], list(report["coordinates"].items()))
        self.metrics = {k: v for k, v in report.items() if k != "coordinates"}
        return report["ok"] and report["levels_positive"]
