"""Separators and the four equivalent Cayley-Bacharach decision procedures.

A point set has CBP(r) when every degree-r hypersurface through all but
one of its points also passes through the last one. Four routes decide
this:

  hf            - removing any point leaves the degree-r Hilbert function value unchanged
  alpha         - every minimal separator has degree at least r+1
  divisibility  - no nonzero degree-r_X class of a separator ideal is x0^(r_X - r) times a degree-r class
  dual          - a degree -r functional orthogonal to all degree-r evaluations exists with full support

``cbp`` always runs all four and insists they agree; a disagreement is a
bug in this package, never a property of the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .hilbert import eval_matrix, hf, hf_full, monomials, _eval_monomial
from .projective import PointSet, ensure_x0_nonvanishing
from .qlinalg import QMatrix, consistent_columns, kernel


class ChartError(ValueError):
    """A point lies on {x0 = 0}; apply ensure_x0_nonvanishing first."""


class MethodDisagreement(RuntimeError):
    """The four CBP procedures returned different verdicts (internal bug)."""

    def __init__(self, r: int, verdicts: dict[str, bool]):
        super().__init__(f"CBP({r}) method disagreement: {verdicts}")
        self.r = r
        self.verdicts = dict(verdicts)


@dataclass(frozen=True)
class Separator:
    """Minimal-degree form vanishing on all points but one, value 1 there."""

    point_index: int
    alpha: int
    coeffs: tuple[Fraction, ...]


@dataclass(frozen=True)
class DualVector:
    """Vector over the points orthogonal to every degree-r monomial evaluation."""

    entries: tuple[Fraction, ...]
    degree: int


@dataclass(frozen=True)
class CBPReport:
    r: int
    verdict: bool
    hf_method: bool
    alpha_method: bool
    div_method: bool
    dual_method: bool
    witness: DualVector | None
    failing_point: int | None

    @property
    def per_method(self) -> dict[str, bool]:
        return {
            "hf": self.hf_method,
            "alpha": self.alpha_method,
            "divisibility": self.div_method,
            "dual": self.dual_method,
        }


@lru_cache(maxsize=1 << 16)
def alpha(x: PointSet, p: int) -> int:
    """Initial degree of the separator ideal of x minus the point labeled p.

    Smallest i where dropping p lowers the Hilbert function; at most the
    regularity index of x.
    """
    if len(x) < 2:
        raise ValueError("alpha needs at least two points")
    y = x.without(p)
    i = 1
    while True:
        if hf(y, i) < hf(x, i):
            return i
        if i > len(x):
            raise AssertionError("alpha exceeded the regularity index")
        i += 1


@lru_cache(maxsize=1 << 14)
def separator(x: PointSet, p: int) -> Separator:
    """A minimal separator for the point labeled p, normalized to 1 at p."""
    a = alpha(x, p)
    y = x.without(p)
    if hf(x, a) - hf(y, a) != 1:
        raise RuntimeError(f"separator space at degree {a} is not one-dimensional")
    mons = monomials(x.ambient_n, a)
    pt = x.point(p)
    for vec in kernel(eval_matrix(y, a)):
        val = sum((c * _eval_monomial(e, pt.coords) for c, e in zip(vec, mons)), Fraction(0))
        if val != 0:
            return Separator(p, a, tuple(c / val for c in vec))
    raise RuntimeError("no kernel vector separates the point; alpha is inconsistent")


def cbp_hf(x: PointSet, r: int) -> bool:
    """CBP(r) via Hilbert functions; see failing_point_hf for a witness."""
    return failing_point_hf(x, r) is None


def failing_point_hf(x: PointSet, r: int) -> int | None:
    if r < 0:
        raise ValueError("degree must be nonnegative")
    if r >= hf_full(x).reg_index:
        # every removal drops the stabilized value |X|; avoids huge matrices
        return x.labels[0]
    hx = hf(x, r)
    for p in x.labels:
        if hf(x.without(p), r) < hx:
            return p
    return None


def cbp_alpha(x: PointSet, r: int) -> bool:
    """CBP(r) iff every point's separator degree is at least r+1."""
    if r < 0:
        raise ValueError("degree must be nonnegative")
    return all(alpha(x, p) >= r + 1 for p in x.labels)


def cbp_separator_div(x: PointSet, r: int) -> bool:
    """CBP(r) via divisibility in the coordinate ring at the top degree.

    For each point p with separator f of degree a, the class
    x0^(r_X - a) * f spans the separator ideal in degree r_X. CBP(r) holds
    iff none of these classes is x0^(r_X - r) times a degree-r class,
    i.e. the linear system over degree-r coefficient vectors

        (evaluations of x0^(r_X - r) * g)  =  (evaluations of x0^(r_X - a) * f)

    is inconsistent for every p. Requires all points off {x0 = 0}.
    """
    if any(p.coords[0] == 0 for p in x.points):
        raise ChartError(
            "a point lies on {x0 = 0}; apply ensure_x0_nonvanishing before the divisibility test"
        )
    r_x = hf_full(x).reg_index
    if r < 0 or r > r_x:
        raise ValueError(f"divisibility test needs 0 <= r <= r_X = {r_x}")
    if len(x) < 2:
        raise ValueError("divisibility test needs at least two points")

    shift = r_x - r
    base = eval_matrix(x, r)
    lhs_rows = []
    for i, pt in enumerate(x.points):
        scale = pt.coords[0] ** shift
        lhs_rows.append([scale * v for v in base.row(i)])
    lhs = QMatrix.from_rows(lhs_rows)

    rhs_cols = []
    for p in x.labels:
        f = separator(x, p)
        mons = monomials(x.ambient_n, f.alpha)
        col = []
        for pt in x.points:
            fv = sum((c * _eval_monomial(e, pt.coords) for c, e in zip(f.coeffs, mons)), Fraction(0))
            col.append(pt.coords[0] ** (r_x - f.alpha) * fv)
        rhs_cols.append(col)
    rhs = QMatrix.from_rows(list(map(list, zip(*rhs_cols))))

    solvable = consistent_columns(lhs, rhs)
    return not any(solvable)


def cbp_dual(x: PointSet, r: int) -> DualVector | None:
    """A full-support vector orthogonal to all degree-r evaluations, if any.

    The kernel of the transposed evaluation matrix models the degree -r
    piece of the canonical module; full support means nothing annihilates
    the functional. The witness is sum(t^j * basis_j) for the smallest
    positive integer t leaving every coordinate nonzero.
    """
    if r < 0:
        raise ValueError("degree must be nonnegative")
    if r > hf_full(x).reg_index:
        return None  # the kernel is 0 once the Hilbert function stabilizes
    basis = kernel(eval_matrix(x, r).transpose())
    if not basis:
        return None
    size = len(x)
    for j in range(size):
        if all(vec[j] == 0 for vec in basis):
            return None
    t = 1
    while True:
        c = [Fraction(0)] * size
        power = Fraction(1)
        for vec in basis:
            for j in range(size):
                c[j] += power * vec[j]
            power *= t
        if all(v != 0 for v in c):
            return DualVector(tuple(c), r)
        t += 1


def cbp(x: PointSet, r: int) -> CBPReport:
    """Run all four CBP(r) procedures and return their common verdict.

    Singletons follow the convention CBP(0) true, CBP(r>=1) false. When
    some point lies on {x0 = 0} the divisibility test runs on a
    deterministically chart-fixed copy (the property is invariant under
    invertible coordinate changes).
    """
    if r < 0:
        raise ValueError("degree must be nonnegative")
    if len(x) == 0:
        raise ValueError("CBP of the empty set is undefined")
    if len(x) == 1:
        verdict = r == 0
        return CBPReport(
            r, verdict, verdict, verdict, verdict, verdict,
            witness=None, failing_point=None if verdict else x.labels[0],
        )

    failing = failing_point_hf(x, r)
    m_hf = failing is None
    m_alpha = cbp_alpha(x, r)
    witness = cbp_dual(x, r)
    m_dual = witness is not None

    r_x = hf_full(x).reg_index
    if r > r_x:
        m_div = False  # CBP(r) is impossible past r_X - 1; divisibility is read as failing
    else:
        chart = x
        if any(p.coords[0] == 0 for p in x.points):
            chart, _ = ensure_x0_nonvanishing(x, seed=0)
        m_div = cbp_separator_div(chart, r)

    verdicts = {"hf": m_hf, "alpha": m_alpha, "divisibility": m_div, "dual": m_dual}
    if len(set(verdicts.values())) != 1:
        raise MethodDisagreement(r, verdicts)
    return CBPReport(r, m_hf, m_hf, m_alpha, m_div, m_dual, witness, failing)


def cbp_fast(x: PointSet, r: int) -> bool:
    """Hilbert-function route only (for sweeps and searches); same verdicts."""
    if len(x) == 0:
        raise ValueError("CBP of the empty set is undefined")
    if len(x) == 1:
        return r == 0
    return cbp_hf(x, r)


def max_cbp_degree(x: PointSet, fast: bool = False) -> tuple[int, bool]:
    """Largest r with CBP(r), and whether it equals r_X - 1 (CB scheme).

    CBP(0) always holds for two or more points, so the downward search
    from r_X - 1 terminates. The fast route uses separator degrees only.
    """
    if len(x) < 2:
        raise ValueError("max_cbp_degree needs at least two points")
    r_x = hf_full(x).reg_index
    if fast:
        best = min(alpha(x, p) for p in x.labels) - 1
        return best, best == r_x - 1
    for r in range(r_x - 1, -1, -1):
        if cbp(x, r).verdict:
            return r, r == r_x - 1
    raise AssertionError("CBP(0) must hold for point sets of size >= 2")
