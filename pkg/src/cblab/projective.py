"""Projective points, flats, spans, intersections, and skew/split tests.

A flat is stored as a row basis in reduced echelon form, which is a
canonical representative: two flats are equal iff their basis matrices
are equal. Points are normalized so the first nonzero coordinate is 1,
making equality and hashing plain field comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .qlinalg import QMatrix, inverse, kernel, rank, rref
from .rand import SplitMix


@dataclass(frozen=True)
class ProjPoint:
    """Point of projective n-space; coords normalized, not all zero."""

    coords: tuple[Fraction, ...]

    @property
    def ambient_n(self) -> int:
        return len(self.coords) - 1

    def __str__(self) -> str:
        return "(" + ":".join(str(c) for c in self.coords) + ")"


def proj_point(coords: Sequence) -> ProjPoint:
    """Build a point, scaling so the first nonzero coordinate is 1."""
    vals = [c if isinstance(c, Fraction) else Fraction(c) for c in coords]
    lead = next((c for c in vals if c != 0), None)
    if lead is None:
        raise ValueError("projective point needs a nonzero coordinate")
    return ProjPoint(tuple(c / lead for c in vals))


@dataclass(frozen=True)
class Flat:
    """Linear subspace of P^n given by an echelonized row basis."""

    ambient_n: int
    basis: QMatrix

    @property
    def proj_dim(self) -> int:
        return self.basis.rows - 1

    def points(self) -> tuple[ProjPoint, ...]:
        """The basis rows as projective points (spanning set)."""
        return tuple(proj_point(self.basis.row(i)) for i in range(self.basis.rows))

    def __str__(self) -> str:
        rows = " ; ".join(
            "[" + " ".join(str(x) for x in self.basis.row(i)) + "]" for i in range(self.basis.rows)
        )
        return f"Flat(dim={self.proj_dim}, {rows})"


def flat_from_rows(ambient_n: int, rows: Sequence[Sequence]) -> Flat:
    """Flat spanned by the given homogeneous representatives."""
    m = QMatrix.from_rows([list(r) for r in rows])
    if m.cols != ambient_n + 1:
        raise ValueError("row length does not match ambient dimension")
    res = rref(m)
    if res.rank == 0:
        raise ValueError("flat needs at least one nonzero representative")
    basis = QMatrix(res.rank, m.cols, res.reduced.entries[: res.rank * m.cols])
    return Flat(ambient_n, basis)


SpanItem = Union[ProjPoint, Flat]


def span(objects: Iterable[SpanItem]) -> Flat:
    """Smallest flat containing every given point and flat."""
    rows: list[Sequence[Fraction]] = []
    ambient = None
    for obj in objects:
        if isinstance(obj, ProjPoint):
            n, new_rows = obj.ambient_n, [obj.coords]
        elif isinstance(obj, Flat):
            n, new_rows = obj.ambient_n, [obj.basis.row(i) for i in range(obj.basis.rows)]
        else:
            raise TypeError(f"cannot span {type(obj).__name__}")
        if ambient is None:
            ambient = n
        elif ambient != n:
            raise ValueError("mixed ambient dimensions in span")
        rows.extend(new_rows)
    if ambient is None:
        raise ValueError("span of an empty collection")
    return flat_from_rows(ambient, rows)


def contains(f: Flat, p: ProjPoint) -> bool:
    """Whether p lies on f (rank of the basis is unchanged by adding p)."""
    if f.ambient_n != p.ambient_n:
        raise ValueError("ambient dimension mismatch")
    stacked = f.basis.stack(QMatrix.from_rows([list(p.coords)]))
    return rank(stacked) == f.basis.rows


def flat_contains_flat(outer: Flat, inner: Flat) -> bool:
    stacked = outer.basis.stack(inner.basis)
    return rank(stacked) == outer.basis.rows


def intersect(a: Flat, b: Flat) -> Flat | None:
    """The flat a ∩ b, or None when the projective intersection is empty.

    x lies on a flat iff it is orthogonal to the kernel of the basis, so
    the intersection is the kernel of both kernels stacked.
    """
    if a.ambient_n != b.ambient_n:
        raise ValueError("ambient dimension mismatch")
    normals = kernel(a.basis) + kernel(b.basis)
    if not normals:
        return Flat(a.ambient_n, a.basis)  # both are the whole space
    joint = kernel(QMatrix.from_rows(normals))
    if not joint:
        return None
    return flat_from_rows(a.ambient_n, joint)


def are_skew(flats: Sequence[Flat]) -> bool:
    """Pairwise empty intersections."""
    if len(flats) < 2:
        raise ValueError("skewness needs at least two flats")
    for i in range(len(flats)):
        for j in range(i + 1, len(flats)):
            if intersect(flats[i], flats[j]) is not None:
                return False
    return True


def is_split(flats: Sequence[Flat]) -> bool:
    """Each flat misses the span of all the others; trivially true for one."""
    if not flats:
        raise ValueError("split test needs at least one flat")
    if len(flats) == 1:
        return True
    for i in range(len(flats)):
        others = [f for j, f in enumerate(flats) if j != i]
        if intersect(flats[i], span(others)) is not None:
            return False
    return True


@dataclass(frozen=True)
class PointSet:
    """Finite labeled set of distinct points in a common P^n."""

    ambient_n: int
    points: tuple[ProjPoint, ...]
    labels: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def point(self, label: int) -> ProjPoint:
        return self.points[self.labels.index(label)]

    def without(self, label: int) -> "PointSet":
        """The set minus one point; remaining labels are preserved."""
        if label not in self.labels:
            raise KeyError(f"no point labeled {label}")
        keep = [(p, l) for p, l in zip(self.points, self.labels) if l != label]
        return PointSet(self.ambient_n, tuple(p for p, _ in keep), tuple(l for _, l in keep))

    def subset(self, labels: Iterable[int]) -> "PointSet":
        want = set(labels)
        keep = [(p, l) for p, l in zip(self.points, self.labels) if l in want]
        if len(keep) != len(want):
            raise KeyError("subset refers to unknown labels")
        return PointSet(self.ambient_n, tuple(p for p, _ in keep), tuple(l for _, l in keep))

    def labels_on(self, flat: Flat) -> tuple[int, ...]:
        return tuple(l for p, l in zip(self.points, self.labels) if contains(flat, p))

    def add(self, p: ProjPoint) -> "PointSet":
        """Append a point under a fresh label (no-op if already present)."""
        if p in self.points:
            return self
        new_label = max(self.labels, default=-1) + 1
        return PointSet(self.ambient_n, self.points + (p,), self.labels + (new_label,))


def point_set(points: Sequence[ProjPoint], labels: Sequence[int] | None = None) -> PointSet:
    """Validated point set; labels default to 0..len-1."""
    if labels is None:
        labels = tuple(range(len(points)))
    else:
        labels = tuple(labels)
    if len(labels) != len(points):
        raise ValueError("label count does not match point count")
    if len(set(labels)) != len(labels):
        raise ValueError("duplicate labels")
    if len(set(points)) != len(points):
        raise ValueError("duplicate projective points")
    if not points:
        raise ValueError("empty point set; use empty_point_set(n)")
    ambient = points[0].ambient_n
    if any(p.ambient_n != ambient for p in points):
        raise ValueError("mixed ambient dimensions")
    return PointSet(ambient, tuple(points), labels)


def empty_point_set(ambient_n: int) -> PointSet:
    return PointSet(ambient_n, (), ())


def apply_matrix(x: PointSet, m: QMatrix) -> PointSet:
    """Image of x under the linear change of coordinates p -> m*p."""
    if m.rows != m.cols or m.rows != x.ambient_n + 1:
        raise ValueError("matrix does not match ambient dimension")
    return PointSet(
        x.ambient_n,
        tuple(proj_point(m.matvec(p.coords)) for p in x.points),
        x.labels,
    )


def ensure_x0_nonvanishing(x: PointSet, seed: int = 0) -> tuple[PointSet, QMatrix]:
    """Move x off the hyperplane {x0 = 0} by an invertible coordinate change.

    Returns (image of x, change matrix m). When no point lies on the
    hyperplane the change is the identity. Candidate linear forms come from
    a seeded SplitMix stream; only finitely many forms can hit a point of
    x, so widening the coefficient range must eventually succeed.
    """
    n = x.ambient_n
    if all(p.coords[0] != 0 for p in x.points):
        return x, QMatrix.identity(n + 1)
    sm = SplitMix(seed)
    lam = None
    for attempt in range(256):
        bound = 2 + attempt // 8
        cand = [Fraction(sm.int_in(-bound, bound)) for _ in range(n + 1)]
        if all(c == 0 for c in cand):
            continue
        if all(sum(c * pc for c, pc in zip(cand, p.coords)) != 0 for p in x.points):
            lam = cand
            break
    if lam is None:  # pragma: no cover - the retry loop is effectively total
        raise RuntimeError("could not find a hyperplane avoiding the point set")
    rows = [lam]
    for j in range(n + 1):
        unit = [Fraction(int(k == j)) for k in range(n + 1)]
        if rank(QMatrix.from_rows(rows + [unit])) > len(rows):
            rows.append(unit)
        if len(rows) == n + 1:
            break
    m = QMatrix.from_rows(rows)
    return apply_matrix(x, m), m


def invert_change(m: QMatrix) -> QMatrix:
    """Inverse of a change-of-coordinates matrix."""
    return inverse(m)
