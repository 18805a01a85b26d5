# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

from .atoms import (Atom, AtomKind, AtomSet, BasisIndex, SparseVec, build_atoms, e, et, a_prime, a_coef, b_coef,
                    n_count, beta, alpha, SCALE, N_MAX_LIMIT)
from .herding_sim import HerdState, run, step, replay, candidates, trace_to_rows, initial_state, norm_sq
from .verification import (verify_invariants, divergence_check, divergence_threshold, coefficient_profile, write_profile_csv,
                           norm_sq_bound, implied_norm_sq, gamma_lower_bound, log_floor_index, NORM_FLOOR)
from .measure import measure_mean_check, density_constants, delta
