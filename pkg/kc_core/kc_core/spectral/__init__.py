# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

from .eig import power_iteration, extreme_eigs, smallest_eig
from .diameter import (BoundVariant, SpectralReport, sup_ratio_bound, select_points, diam_lower_kplus, diam_lower_kminus,
                       diam_lower_mercer, diam_lower_kfunctional, mercer_estimate)
from .k_functional import KFunctionalResult, k_functional, k_functional_curve
from .balls import BallReport, unit_ball_volume, counter_mass, ball_radius, threshold_terms, sample_threshold, ball_report, direct_sum_diam_lower
from .deviation import (C_TILDE, vc_j1, vc_uniform_bound, rademacher_bound, circle_indicator_mass, circle_psi_mass, min_sample_size,
                        polytope_sample_size, circle_directions, empirical_ball_radius)
