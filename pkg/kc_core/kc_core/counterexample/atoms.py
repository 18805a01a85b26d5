# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
"""Atoms of the sequence-space construction on which kernel herding fails to converge at rate 1/t.

The space has an orthonormal basis {e_n} together with {et_(n, i) : n >= 2, 1 <= i <= N_n}. Atoms are
sparse vectors over it:

    a_n     = (a'_n + 1/n) e_n,  a'_n = C ceil(2^n / ln(n+1)) 2^-n,  C = 64
    b_n     = -2^-n e_n
    c_{1,1} = e_1 + alpha_{2,1} et_(2,1)
    c_{n,i} = beta_n e_n + alpha_{n,i} et_(n,i) - alpha_{n,i+1} et_(n,i+1)   (et_(n+1,1) after i = N_n)
    d_2     = -alpha_{2,1} et_(2,1) / 2,  d_n = alpha_{n,1} et_(n,1) / 2 for n > 2

N_n grows like 2^(n+1)/n, so the c atoms are produced on demand.
"""
import math
from enum import IntEnum
from functools import lru_cache
from typing import Dict, Iterator, NamedTuple

from kc_core.errors import UsageError

N_MAX_LIMIT = 60
SCALE = 4 * math.ceil(3 + 4 * math.log(9) / math.log(2))


class BasisIndex(NamedTuple):
    tilde: int
    n: int
    i: int = 0

    def __str__(self):
        return f"et({self.n},{self.i})" if self.tilde else f"e({self.n})"


def e(n: int) -> BasisIndex:
    return BasisIndex(0, n, 0)


def et(n: int, i: int) -> BasisIndex:
    return BasisIndex(1, n, i)


SparseVec = Dict[BasisIndex, float]


class AtomKind(IntEnum):
    A = 0
    B = 1
    C = 2
    D = 3


class Atom(NamedTuple):
    kind: AtomKind
    n: int
    i: int
    vec: SparseVec

    @property
    def key(self):
        return (int(self.kind), self.n, self.i)

    def label(self) -> str:
        if self.kind == AtomKind.C:
            return f"c({self.n},{self.i})"
        return f"{self.kind.name.lower()}({self.n})"


def a_prime(n: int) -> float:
    return SCALE * math.ceil(2**n / math.log(n + 1)) * 2.0**-n


def a_coef(n: int) -> float:
    """ <e_n, a_n> """
    return a_prime(n) + 1. / n


def b_coef(n: int) -> float:
    return -(2.0**-n)


def n_count(n: int) -> int:
    """ N_1 = 1 and N_n = ceil(2 / (n 2^-n)) = ceil(2^(n+1) / n). """
    if n == 1:
        return 1
    return -(-(2**(n + 1)) // n)


def beta(n: int) -> float:
    return -1. / (n * n_count(n))


@lru_cache(maxsize=None)
def _alpha_1_sq(n: int) -> float:
    return a_coef(n) / n


def alpha(n: int, i: int) -> float:
    return math.sqrt(_alpha_1_sq(n) + (i - 1) * beta(n)**2)


def next_tilde(n: int, i: int) -> BasisIndex:
    """ The second tilde index of c_{n,i}. """
    if i < n_count(n):
        return et(n, i + 1)
    return et(n + 1, 1)


class AtomSet:
    """ All atoms with index n <= n_max. a, b and d atoms are stored, c atoms are built when asked for. """

    def __init__(self, n_max: int):
        if not 2 <= n_max <= N_MAX_LIMIT:
            raise UsageError(f"n_max must lie in [2, {N_MAX_LIMIT}], got {n_max}")
        self.n_max = n_max
        self.a = {n: Atom(AtomKind.A, n, 0, {e(n): a_coef(n)}) for n in range(1, n_max + 1)}
        self.b = {n: Atom(AtomKind.B, n, 0, {e(n): b_coef(n)}) for n in range(1, n_max + 1)}
        self.d = {2: Atom(AtomKind.D, 2, 0, {et(2, 1): -0.5 * alpha(2, 1)})}
        for n in range(3, n_max + 1):
            self.d[n] = Atom(AtomKind.D, n, 0, {et(n, 1): 0.5 * alpha(n, 1)})
        self.c11 = Atom(AtomKind.C, 1, 1, {e(1): 1., et(2, 1): alpha(2, 1)})

    def c(self, n: int, i: int) -> Atom:
        if n == 1:
            if i != 1:
                raise UsageError("c_{1,i} exists only for i = 1")
            return self.c11
        if not (2 <= n <= self.n_max and 1 <= i <= n_count(n)):
            raise UsageError(f"c({n},{i}) is outside the construction with n_max = {self.n_max}")
        return Atom(AtomKind.C, n, i, {e(n): beta(n), et(n, i): alpha(n, i), next_tilde(n, i): -alpha(*next_tilde(n, i)[1:])})

    def get(self, kind: AtomKind, n: int, i: int = 0) -> Atom:
        kind = AtomKind(kind)
        if kind == AtomKind.C:
            return self.c(n, i)
        table = {AtomKind.A: self.a, AtomKind.B: self.b, AtomKind.D: self.d}[kind]
        if n not in table:
            raise UsageError(f"{kind.name.lower()}({n}) is outside the construction with n_max = {self.n_max}")
        return table[n]

    def contains(self, kind: AtomKind, n: int, i: int = 0) -> bool:
        try:
            self.get(kind, n, i)
            return True
        except UsageError:
            return False

    def c_count(self) -> int:
        return 1 + sum(n_count(n) for n in range(2, self.n_max + 1))

    def __len__(self):
        return len(self.a) + len(self.b) + len(self.d) + self.c_count()

    def __iter__(self) -> Iterator[Atom]:
        yield from self.a.values()
        yield from self.b.values()
        yield self.c11
        for n in range(2, self.n_max + 1):
            for i in range(1, n_count(n) + 1):
                yield self.c(n, i)
        yield from self.d.values()


def build_atoms(n_max: int) -> AtomSet:
    return AtomSet(n_max)
