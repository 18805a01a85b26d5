# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

import math

import pytest

from kc_core.counterexample import (SCALE, AtomKind, AtomSet, a_prime, build_atoms, divergence_check, divergence_threshold,
                                    coefficient_profile, et, implied_norm_sq, measure_mean_check, n_count, norm_sq_bound, run,
                                    verify_invariants)
from kc_core.errors import UsageError


@pytest.fixture(scope="module")
def short_run():
    return run(build_atoms(40), 1000)


def test_constants():
    assert SCALE == 64
    assert n_count(2) == 4
    values = [a_prime(n) for n in range(1, 41)]
    assert all(a >= b for a, b in zip(values, values[1:]))


def test_first_steps(short_run):
    kind, n, _ = short_run.chosen_log[0]
    assert (kind, n) == (AtomKind.A, 1)
    assert all(entry[:2] != (AtomKind.C, 1) or entry[2] != 1 for entry in short_run.chosen_log)


def test_invariants_short_run(short_run):
    report = verify_invariants(short_run)
    assert report["ok"], report["first_violation"]
    a_steps = [n for kind, n, _ in short_run.chosen_log if kind == AtomKind.A]
    assert a_steps == list(range(1, len(a_steps) + 1))


def test_divergence_bound():
    assert norm_sq_bound(7) < 0.
    assert divergence_threshold() == 46
    envelope = [norm_sq_bound(n) for n in range(7, 60)]
    assert envelope == sorted(envelope)


def test_divergence_bound_from_coordinate_ceiling():
    # (n - N(n)) terms of size 1/ln^2(n+1) dominate the closed-form bound once it is positive
    for n in list(range(divergence_threshold(), 2000)) + [10 ** 4, 10 ** 5, 10 ** 6]:
        assert implied_norm_sq(n) >= norm_sq_bound(n) > 0.
    assert norm_sq_bound(45) <= 0.
    assert norm_sq_bound(10 ** 6) > 1000.


def test_divergence_check_envelope(short_run):
    report = divergence_check(short_run)
    assert report["ok"], report["first_violation"]
    assert report["max_norm"] > 3.
    assert max(short_run.norm_sq_trace) > 9.
    for entry in report["envelope"]:
        assert entry["min_norm_sq"] >= entry["bound"] - 1e-9
        assert entry["implied"] >= entry["bound"]


def test_divergence_check_norm_floor(short_run):
    report = divergence_check(short_run, norm_floor=10. * math.sqrt(max(short_run.norm_sq_trace)))
    assert not report["ok"]
    assert report["first_violation"] is None


def test_coefficient_profile_rows(short_run):
    tables = coefficient_profile(short_run, [1, 5])
    assert all(lower == 0. for _, _, lower in tables[1])
    for n, value, lower in tables[5]:
        assert lower <= value + 1e-9
    with pytest.raises(UsageError, match="reachable m"):
        coefficient_profile(short_run, [10 ** 6])


def test_measure_check():
    report = measure_mean_check(20)
    assert report["ok"]
    assert report["levels_positive"]
    assert report["max_abs_coordinate"] <= 1e-10
    assert 0. < report["tail_residual"]
    assert report["closed_form_gap"] <= 1e-10


class SkewedAtoms(AtomSet):

    def c(self, n, i):
        atom = super().c(n, i)
        if (n, i) != (3, 2):
            return atom
        vec = dict(atom.vec)
        vec[et(3, 2)] *= 1.1
        return atom._replace(vec=vec)


def test_measure_check_reads_atom_vectors():
    report = measure_mean_check(20, atoms=SkewedAtoms(20))
    assert not report["ok"]
    assert report["worst_coordinate"] == "et(3,2)"
    with pytest.raises(UsageError):
        measure_mean_check(20, atoms=build_atoms(10))


@pytest.mark.slow
def test_long_run():
    state = run(build_atoms(40), 20000)
    invariants = verify_invariants(state)
    divergence = divergence_check(state)
    assert invariants["ok"], invariants["first_violation"]
    assert divergence["ok"], divergence["first_violation"]
    half = len(state.norm_sq_trace) // 2
    assert max(state.norm_sq_trace[half:]) > max(state.norm_sq_trace[:half])
    assert divergence["max_norm"] > 3.
