"""Plane configurations and exact minimum-dimension covers of point sets.

A plane configuration is a union of distinct positive-dimensional flats;
its dimension is the sum of the flats' dimensions. The minimum dimension
of a configuration containing a point set equals the minimum over all
partitions of the points of sum(max(1, span_dim(block))), and minimal
covers can always be built from matroid-closed subsets (a flat shrunk to
the span of the points it is responsible for never costs more, and points
lying on an already chosen flat ride along for free). The search is a
branch and bound over closed sets, always branching on the lowest
uncovered point.

The closed-set machinery runs on gcd-reduced integer coordinates for
speed; the emitted flats are canonical rational row bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .projective import Flat, PointSet, ProjPoint, are_skew, contains, is_split, span

DEFAULT_EXHAUSTIVE_LIMIT = 24


class InexhaustiveSearchError(RuntimeError):
    """The point set exceeds the exhaustive cover-search limit."""


@dataclass(frozen=True)
class PlaneConfiguration:
    """Union of distinct positive-dimensional flats in a common P^n."""

    flats: tuple[Flat, ...]

    @property
    def dimension(self) -> int:
        return sum(f.proj_dim for f in self.flats)

    @property
    def length(self) -> int:
        return len(self.flats)


def plane_configuration(flats) -> PlaneConfiguration:
    flats = tuple(flats)
    if any(f.proj_dim < 1 for f in flats):
        raise ValueError("plane configurations contain positive-dimensional flats only")
    if len(set(flats)) != len(flats):
        raise ValueError("plane configuration flats must be distinct")
    if flats and len({f.ambient_n for f in flats}) != 1:
        raise ValueError("mixed ambient dimensions")
    return PlaneConfiguration(flats)


def config_dim(p: PlaneConfiguration) -> int:
    return p.dimension


def config_len(p: PlaneConfiguration) -> int:
    return p.length


def classify(p: PlaneConfiguration) -> dict[str, bool]:
    """Skew and split flags; both vacuously true below length 2."""
    if p.length < 2:
        return {"skew": True, "split": p.length < 1 or is_split(p.flats)}
    return {"skew": are_skew(p.flats), "split": is_split(p.flats)}


def config_contains(p: PlaneConfiguration, x: PointSet) -> bool:
    return all(any(contains(f, pt) for f in p.flats) for pt in x.points)


@dataclass(frozen=True)
class CoverResult:
    """A plane configuration covering a point set, with responsibilities."""

    config: PlaneConfiguration
    total_dim: int
    blocks: tuple[tuple[int, ...], ...]
    optimal: bool


# --- integer matroid machinery -------------------------------------------


def _int_vector(coords: tuple[Fraction, ...]) -> tuple[int, ...]:
    mult = lcm(*(c.denominator for c in coords))
    ints = [c.numerator * (mult // c.denominator) for c in coords]
    g = gcd(*ints)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


def _residue(rows: list[tuple[int, ...]], vec: tuple[int, ...]) -> tuple[int, ...]:
    """Reduce vec against echelon integer rows (leading indices increasing)."""
    v = list(vec)
    for row in rows:
        lead = next(i for i, r in enumerate(row) if r)
        if v[lead]:
            piv, f = row[lead], v[lead]
            v = [piv * a - f * b for a, b in zip(v, row)]
            g = gcd(*v)
            if g > 1:
                v = [a // g for a in v]
    return tuple(v)


def _extend(rows: list[tuple[int, ...]], vec: tuple[int, ...]) -> list[tuple[int, ...]]:
    res = _residue(rows, vec)
    lead = next(i for i, r in enumerate(res) if r)
    out = list(rows)
    at = next((k for k, row in enumerate(out) if next(i for i, r in enumerate(row) if r) > lead), len(out))
    out.insert(at, res)
    return out


@dataclass(frozen=True)
class _ClosedSet:
    mask: int
    span_dim: int
    members: tuple[int, ...]  # positions, ascending


@lru_cache(maxsize=512)
def _closed_sets(x: PointSet, max_rank: int) -> tuple[_ClosedSet, ...]:
    """All matroid-closed subsets with span dimension <= max_rank.

    Level k+1 flats are closures of a level-k flat plus an outside point;
    extending only by points above the flat's minimum member visits every
    flat exactly through the chain that keeps its minimum inside.
    """
    pts = [_int_vector(p.coords) for p in x.points]
    n = len(pts)
    out: list[_ClosedSet] = []
    level: dict[int, list[tuple[int, ...]]] = {}
    for i in range(n):
        mask = 1 << i
        out.append(_ClosedSet(mask, 0, (i,)))
        level[mask] = [_residue([], pts[i])]
    dim = 0
    while dim < max_rank and level:
        nxt: dict[int, list[tuple[int, ...]]] = {}
        for mask in sorted(level):
            rows = level[mask]
            low = (mask & -mask).bit_length() - 1
            for j in range(low + 1, n):
                if mask >> j & 1:
                    continue
                new_rows = _extend(rows, pts[j])
                new_mask = mask | (1 << j)
                for q in range(n):
                    if not (new_mask >> q & 1) and not any(_residue(new_rows, pts[q])):
                        new_mask |= 1 << q
                if new_mask not in nxt:
                    nxt[new_mask] = new_rows
        dim += 1
        for mask in sorted(nxt):
            members = tuple(q for q in range(n) if mask >> q & 1)
            out.append(_ClosedSet(mask, dim, members))
        level = nxt
    return tuple(out)


def matroid_flats(x: PointSet, max_rank: int) -> list[tuple[tuple[int, ...], int]]:
    """Closed subsets S = X ∩ span(S) with span dimension <= max_rank.

    Returned as (labels, span_dim), ordered by increasing span dimension
    then by labels; each closed set appears once.
    """
    if len(x) == 0:
        return []
    recs = _closed_sets(x, min(max_rank, max(0, len(x) - 1)))
    labeled = [
        (tuple(x.labels[q] for q in rec.members), rec.span_dim)
        for rec in recs
        if rec.span_dim <= max_rank
    ]
    labeled.sort(key=lambda t: (t[1], t[0]))
    return labeled


# --- cover search ----------------------------------------------------------


def _candidates_by_position(x: PointSet, budget: int) -> list[list[_ClosedSet]]:
    span_dim = span(list(x.points)).proj_dim if len(x) else 0
    recs = _closed_sets(x, min(budget, span_dim))
    per: list[list[_ClosedSet]] = [[] for _ in range(len(x))]
    for rec in recs:
        if max(1, rec.span_dim) <= budget:
            for q in rec.members:
                per[q].append(rec)
    for lst in per:
        lst.sort(key=lambda r: (max(1, r.span_dim), -len(r.members), r.members))
    return per


def _exists_cover(x: PointSet, budget: int) -> list[_ClosedSet] | None:
    """A list of closed sets covering x with total cost <= budget, or None."""
    n = len(x)
    if n == 0:
        return []
    if budget < 1:
        return None
    per = _candidates_by_position(x, budget)
    failed: dict[int, int] = {}

    def dfs(uncovered: int, remaining: int) -> list[_ClosedSet] | None:
        if uncovered == 0:
            return []
        if remaining < 1:
            return None
        if failed.get(uncovered, -1) >= remaining:
            return None
        p = (uncovered & -uncovered).bit_length() - 1
        for rec in per[p]:
            cost = max(1, rec.span_dim)
            if cost > remaining:
                break  # sorted by cost
            rest = dfs(uncovered & ~rec.mask, remaining - cost)
            if rest is not None:
                return [rec] + rest
        if failed.get(uncovered, -1) < remaining:
            failed[uncovered] = remaining
        return None

    return dfs((1 << n) - 1, budget)


def _auxiliary_line(x: PointSet, position: int) -> Flat:
    """Deterministic line through a singleton block's point."""
    p = x.points[position]
    n = x.ambient_n
    if n < 1:
        raise ValueError("no positive-dimensional flats exist in P^0")
    for j in range(n + 1):
        unit = ProjPoint(tuple(Fraction(int(k == j)) for k in range(n + 1)))
        if unit != p:
            return span([p, unit])
    raise AssertionError("unreachable: a point differs from some unit point")


def _build_result(x: PointSet, chosen: list[_ClosedSet], optimal: bool) -> CoverResult:
    flats: list[Flat] = []
    blocks: list[list[int]] = []
    assigned = 0
    for rec in chosen:
        if rec.span_dim == 0:
            flat = _auxiliary_line(x, rec.members[0])
        else:
            flat = span([x.points[q] for q in rec.members])
        fresh = rec.mask & ~assigned
        assigned |= rec.mask
        block = [x.labels[q] for q in range(len(x)) if fresh >> q & 1]
        if flat in flats:  # duplicate flats merge (configuration flats are distinct)
            blocks[flats.index(flat)].extend(block)
        else:
            flats.append(flat)
            blocks.append(block)
    config = plane_configuration(flats)
    return CoverResult(
        config,
        config.dimension,
        tuple(tuple(sorted(b)) for b in blocks),
        optimal,
    )


def min_cover(
    x: PointSet, budget: int, limit: int = DEFAULT_EXHAUSTIVE_LIMIT
) -> CoverResult | None:
    """Minimum-dimension plane configuration containing x, if one fits the budget.

    Exhaustive only up to `limit` points; beyond that an
    InexhaustiveSearchError is raised and greedy_cover gives an upper bound.
    """
    if len(x) > limit:
        raise InexhaustiveSearchError(
            f"{len(x)} points exceed the exhaustive cover limit {limit}"
        )
    if len(x) == 0:
        return CoverResult(PlaneConfiguration(()), 0, (), True)
    if x.ambient_n < 1:
        return None  # P^0 has no positive-dimensional flats
    for b in range(1, budget + 1):
        chosen = _exists_cover(x, b)
        if chosen is not None:
            return _build_result(x, chosen, True)
    return None


def min_cover_dim(x: PointSet, limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> int:
    """Dimension of the optimal cover (0 for the empty set)."""
    if len(x) == 0:
        return 0
    if x.ambient_n < 1:
        raise ValueError("no positive-dimensional flats exist in P^0")
    if len(x) > limit:
        raise InexhaustiveSearchError(
            f"{len(x)} points exceed the exhaustive cover limit {limit}"
        )
    ceiling = max(1, span(list(x.points)).proj_dim)
    for b in range(1, ceiling + 1):
        if _exists_cover(x, b) is not None:
            return b
    raise AssertionError("span(x) itself always covers x")


def lies_on_config_dim(x: PointSet, d: int, limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> bool:
    """Whether some plane configuration of dimension <= d contains x."""
    if len(x) == 0:
        return True
    if d < 1 or x.ambient_n < 1:
        return False
    if len(x) > limit:
        raise InexhaustiveSearchError(
            f"{len(x)} points exceed the exhaustive cover limit {limit}"
        )
    return _exists_cover(x, d) is not None


def greedy_cover(x: PointSet, rank_cap: int = 3) -> CoverResult:
    """Upper-bound cover: repeatedly take the closed set with the best
    newly-covered-points-per-dimension ratio. Never claimed optimal."""
    if len(x) == 0:
        return CoverResult(PlaneConfiguration(()), 0, (), False)
    span_dim = span(list(x.points)).proj_dim
    recs = _closed_sets(x, min(max(1, rank_cap), max(1, span_dim)))
    uncovered = (1 << len(x)) - 1
    chosen: list[_ClosedSet] = []
    while uncovered:
        best = None
        best_key = None
        for rec in recs:
            fresh = (rec.mask & uncovered).bit_count()
            if fresh == 0:
                continue
            cost = max(1, rec.span_dim)
            key = (-Fraction(fresh, cost), cost, rec.members)
            if best_key is None or key < best_key:
                best, best_key = rec, key
        chosen.append(best)
        uncovered &= ~best.mask
    return _build_result(x, chosen, False)
