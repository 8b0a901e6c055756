"""Exact rational linear algebra: dense matrices over the rationals.

Scalars are stdlib ``fractions.Fraction`` (always reduced, positive
denominator, arbitrary precision). Elimination runs on gcd-reduced integer
rows with division-free cross-multiplication updates, which keeps
intermediate coefficients small; results are converted back to rationals
at the end. Every rank is therefore a certificate, not an approximation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class QMatrix:
    """Immutable dense matrix of Fractions, row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "QMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            flat.extend(_frac(x) for x in row)
        return QMatrix(nrows, ncols, tuple(flat))

    @staticmethod
    def identity(n: int) -> "QMatrix":
        one, zero = Fraction(1), Fraction(0)
        return QMatrix(n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    @staticmethod
    def zero(rows: int, cols: int) -> "QMatrix":
        return QMatrix(rows, cols, (Fraction(0),) * (rows * cols))

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def row_list(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "QMatrix":
        return QMatrix(
            self.cols,
            self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def stack(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch in stack")
        return QMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def matvec(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        vv = [_frac(x) for x in v]
        out = []
        for i in range(self.rows):
            base = i * self.cols
            out.append(sum((self.entries[base + j] * vv[j] for j in range(self.cols)), Fraction(0)))
        return tuple(out)

    def matmul(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError("inner dimension mismatch")
        cols = [other.row(j) for j in range(other.rows)]
        flat = []
        for i in range(self.rows):
            base = i * self.cols
            for j in range(other.cols):
                flat.append(
                    sum((self.entries[base + k] * cols[k][j] for k in range(self.cols)), Fraction(0))
                )
        return QMatrix(self.rows, other.cols, tuple(flat))

    def __str__(self) -> str:
        return "\n".join("[" + " ".join(str(x) for x in self.row(i)) + "]" for i in range(self.rows))


@dataclass(frozen=True)
class RrefResult:
    reduced: QMatrix
    rank: int
    pivot_cols: tuple[int, ...]


def _int_row(row: Iterable[Fraction]) -> list[int]:
    """Scale a rational row to coprime integers (empty rows stay zero)."""
    row = list(row)
    mult = lcm(*(f.denominator for f in row)) if row else 1
    ints = [f.numerator * (mult // f.denominator) for f in row]
    g = gcd(*ints) if ints else 0
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _reduce_int_row(row: list[int]) -> list[int]:
    g = gcd(*row) if row else 0
    if g > 1:
        return [v // g for v in row]
    return row


def _int_rref(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Gauss-Jordan on integer rows; returns (rows, pivot_cols).

    Updates are division-free (piv*row - f*pivrow) with a gcd reduction per
    updated row. After the loop the first len(pivot_cols) rows are the
    integer echelon rows in order; the rest are zero.
    """
    nrows = len(rows)
    pivot_cols: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv_row = rows[r]
        piv = piv_row[c]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                cur = rows[i]
                rows[i] = _reduce_int_row([piv * a - f * b for a, b in zip(cur, piv_row)])
        pivot_cols.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivot_cols


def rref(m: QMatrix) -> RrefResult:
    """Unique reduced row echelon form, rank, and pivot columns."""
    work = [_int_row(m.row(i)) for i in range(m.rows)]
    work, pivot_cols = _int_rref(work, m.cols)
    flat: list[Fraction] = []
    for r, c in enumerate(pivot_cols):
        piv = work[r][c]
        flat.extend(Fraction(v, piv) for v in work[r])
    flat.extend([Fraction(0)] * ((m.rows - len(pivot_cols)) * m.cols))
    return RrefResult(QMatrix(m.rows, m.cols, tuple(flat)), len(pivot_cols), tuple(pivot_cols))


def rank(m: QMatrix) -> int:
    work = [_int_row(m.row(i)) for i in range(m.rows)]
    _, pivot_cols = _int_rref(work, m.cols)
    return len(pivot_cols)


def kernel(m: QMatrix) -> list[Vector]:
    """Basis of the right null space {v : m*v = 0}.

    One basis vector per free column, with that coordinate set to 1; the
    basis size is cols - rank.
    """
    res = rref(m)
    pivot_set = set(res.pivot_cols)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * m.cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(res.pivot_cols):
            v[pc] = -res.reduced.entry(r, fc)
        basis.append(tuple(v))
    return basis


def solve(a: QMatrix, b: Sequence) -> Vector | None:
    """Some x with a*x = b (free variables 0), or None when inconsistent."""
    if len(b) != a.rows:
        raise ValueError("right-hand side length does not match row count")
    bb = [_frac(x) for x in b]
    aug = QMatrix(
        a.rows, a.cols + 1, tuple(x for i in range(a.rows) for x in (*a.row(i), bb[i]))
    )
    res = rref(aug)
    if res.pivot_cols and res.pivot_cols[-1] == a.cols:
        return None
    x = [Fraction(0)] * a.cols
    for r, pc in enumerate(res.pivot_cols):
        x[pc] = res.reduced.entry(r, a.cols)
    return tuple(x)


def consistent_columns(a: QMatrix, b: QMatrix) -> list[bool]:
    """For each column b_j of b, whether a*x = b_j has a solution.

    Single elimination of [a | b]: b_j is consistent iff every reduced row
    whose a-part is zero has a zero entry in column j of the b-part.
    """
    if a.rows != b.rows:
        raise ValueError("row count mismatch")
    aug = QMatrix(
        a.rows, a.cols + b.cols, tuple(x for i in range(a.rows) for x in (*a.row(i), *b.row(i)))
    )
    res = rref(aug)
    flags = [True] * b.cols
    for r, pc in enumerate(res.pivot_cols):
        if pc >= a.cols:
            row = res.reduced.row(r)
            for j in range(b.cols):
                if row[a.cols + j] != 0:
                    flags[j] = False
    return flags


def inverse(m: QMatrix) -> QMatrix:
    """Inverse of a square matrix; raises ValueError when singular."""
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    ident = QMatrix.identity(n)
    aug = QMatrix(n, 2 * n, tuple(x for i in range(n) for x in (*m.row(i), *ident.row(i))))
    res = rref(aug)
    if res.rank < n or any(pc >= n for pc in res.pivot_cols):
        raise ValueError("matrix is singular")
    return QMatrix(n, n, tuple(res.reduced.entry(i, n + j) for i in range(n) for j in range(n)))
