"""Monomial bases, evaluation matrices, Hilbert functions, regularity index.

The Hilbert function value at degree i is computed as the rank of the
matrix evaluating all degree-i monomials at the points. Values are cached
per (point set, degree) because the Cayley-Bacharach procedures probe the
same sets at many degrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb

from .projective import PointSet
from .qlinalg import QMatrix, rank


@lru_cache(maxsize=None)
def monomials(n: int, i: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of total degree i in n+1 variables.

    Ordered by descending degree-reverse-lexicographic order (x0^i first,
    xn^i last); the count is C(n+i, i).
    """
    if i < 0:
        raise ValueError("degree must be nonnegative")
    exps = []
    for combo in combinations_with_replacement(range(n + 1), i):
        e = [0] * (n + 1)
        for v in combo:
            e[v] += 1
        exps.append(tuple(e))
    exps.sort(key=lambda e: tuple(reversed(e)))
    assert len(exps) == comb(n + i, i)
    return tuple(exps)


def _eval_monomial(exponent: tuple[int, ...], coords: tuple[Fraction, ...]) -> Fraction:
    val = Fraction(1)
    for e, c in zip(exponent, coords):
        if e:
            val *= c**e
    return val


@lru_cache(maxsize=64)
def eval_matrix(x: PointSet, i: int) -> QMatrix:
    """Rows = points in label order, columns = monomials(n, i)."""
    mons = monomials(x.ambient_n, i)
    flat = tuple(_eval_monomial(e, p.coords) for p in x.points for e in mons)
    return QMatrix(len(x.points), len(mons), flat)


@lru_cache(maxsize=1 << 17)
def hf(x: PointSet, i: int) -> int:
    """Hilbert function of x at degree i (0 for negative i, 0 for empty x)."""
    if i < 0 or len(x) == 0:
        return 0
    return rank(eval_matrix(x, i))


@dataclass(frozen=True)
class HilbertFunction:
    """HF values for degrees 0..reg_index+1 plus the regularity index."""

    values: tuple[int, ...]
    reg_index: int
    cardinality: int

    def value(self, i: int) -> int:
        if i < 0:
            return 0
        if i >= len(self.values):
            return self.cardinality
        return self.values[i]


def hf_full(x: PointSet) -> HilbertFunction:
    """Compute HF until it stabilizes at |x|; reg_index is the first such degree."""
    if len(x) == 0:
        raise ValueError("Hilbert function of the empty set is identically zero")
    card = len(x)
    values = []
    i = 0
    while True:
        v = hf(x, i)
        values.append(v)
        if v == card:
            break
        if i > card:  # HF must reach |x| by degree |x| - 1
            raise AssertionError("Hilbert function failed to stabilize")
        i += 1
    reg_index = len(values) - 1
    values.append(card)
    h = HilbertFunction(tuple(values), reg_index, card)
    for j in range(1, reg_index + 1):
        assert h.values[j] > h.values[j - 1], "HF must strictly increase below the regularity index"
    return h


def delta_hf(h: HilbertFunction) -> tuple[int, ...]:
    """First differences for degrees 0..reg_index+1; they sum to |x|."""
    prev = 0
    out = []
    for v in h.values:
        out.append(v - prev)
        prev = v
    return tuple(out)
