"""Separators and the four Cayley-Bacharach procedures, cross-checked."""

import random
from fractions import Fraction

import pytest

from cblab.cbp import (
    ChartError,
    alpha,
    cbp,
    cbp_alpha,
    cbp_dual,
    cbp_hf,
    cbp_separator_div,
    max_cbp_degree,
    separator,
)
from cblab.harness import gen_collinear, gen_grid, gen_on_flats, gen_random
from cblab.hilbert import eval_matrix, hf, hf_full, monomials, _eval_monomial
from cblab.projective import (
    apply_matrix,
    ensure_x0_nonvanishing,
    flat_from_rows,
    point_set,
    proj_point,
)
from cblab.qlinalg import kernel


def collinear(s):
    return point_set([proj_point([1, t]) for t in range(s)])


def triangle():
    return point_set([proj_point([1, 0, 0]), proj_point([1, 1, 0]), proj_point([1, 0, 1])])


def general_quad():
    return point_set(
        [proj_point([1, 0, 0]), proj_point([1, 1, 0]), proj_point([1, 0, 1]), proj_point([1, 2, 3])]
    )


def grid33():
    return gen_grid(3, 3).point_set


def eval_form(coeffs, degree, n, pt):
    mons = monomials(n, degree)
    return sum((c * _eval_monomial(e, pt.coords) for c, e in zip(coeffs, mons)), Fraction(0))


# --- alpha and separators ---------------------------------------------------


def test_alpha_two_points():
    x = point_set([proj_point([1, 0]), proj_point([1, 1])])
    assert alpha(x, 0) == 1
    assert alpha(x, 1) == 1


def test_alpha_collinear():
    for s in (2, 3, 5, 7):
        x = collinear(s)
        for p in x.labels:
            assert alpha(x, p) == s - 1


def test_alpha_triangle():
    x = triangle()
    for p in x.labels:
        assert alpha(x, p) == 1


def test_separator_two_points_p1():
    x = point_set([proj_point([1, 0]), proj_point([1, 1])])
    sep = separator(x, 1)
    assert sep.alpha == 1
    # vanishes at (1:0), equals 1 at (1:1): the form X1
    assert sep.coeffs == (Fraction(0), Fraction(1))


def test_separator_grid_corner():
    x = grid33()
    corner = next(l for p, l in zip(x.points, x.labels) if p == proj_point([1, 2, 2]))
    sep = separator(x, corner)
    assert sep.alpha == 4
    for p, l in zip(x.points, x.labels):
        v = eval_form(sep.coeffs, 4, 2, p)
        assert v == (1 if l == corner else 0)
    # the explicit product of four avoiding grid lines spans the same class:
    # x1(x1-x0)x2(x2-x0) evaluates to 4 at the corner and 0 elsewhere
    for p, l in zip(x.points, x.labels):
        _, a, b = p.coords
        prod = a * (a - 1) * b * (b - 1)
        assert prod == (4 if l == corner else 0)


def test_separator_four_general_points_conic():
    x = general_quad()
    for p in x.labels:
        sep = separator(x, p)
        assert sep.alpha == 2
        assert hf(x.without(p), 1) == 3 == hf(x, 1)
        assert hf(x.without(p), 2) == 3 < hf(x, 2)


def test_separator_vanishes_and_normalized():
    rng = random.Random(77)
    for k in range(8):
        inst = gen_random(2, rng.randint(2, 7), 5, seed=300 + k)
        x = inst.point_set
        for p in x.labels:
            sep = separator(x, p)
            for q, l in zip(x.points, x.labels):
                v = eval_form(sep.coeffs, sep.alpha, x.ambient_n, q)
                assert v == (1 if l == p else 0)
            assert sep.alpha <= hf_full(x).reg_index


# --- individual methods -----------------------------------------------------


def test_cbp_hf_examples():
    assert cbp_hf(collinear(4), 0)
    assert not cbp_hf(triangle(), 1)
    assert cbp_hf(grid33(), 3)


def test_cbp_alpha_examples():
    assert cbp_alpha(point_set([proj_point([1, 0]), proj_point([1, 1])]), 0)
    assert not cbp_alpha(grid33(), 4)
    for s in (3, 4, 6):
        assert cbp_alpha(collinear(s), s - 2)


def test_cbp_divisibility_examples():
    assert cbp_separator_div(grid33(), 3)
    assert not cbp_separator_div(triangle(), 1)
    assert cbp_separator_div(point_set([proj_point([1, 0]), proj_point([1, 1])]), 0)


def test_cbp_divisibility_needs_chart():
    x = point_set([proj_point([0, 1, 0]), proj_point([1, 1, 1]), proj_point([1, 0, 1])])
    with pytest.raises(ChartError):
        cbp_separator_div(x, 0)


def test_cbp_divisibility_degree_range():
    x = collinear(3)
    with pytest.raises(ValueError):
        cbp_separator_div(x, 5)  # past r_X = 2


def test_cbp_dual_examples():
    x = point_set([proj_point([1, 0]), proj_point([1, 1])])
    w = cbp_dual(x, 0)
    assert w is not None
    assert sorted(w.entries) == [Fraction(-1), Fraction(1)]
    assert cbp_dual(triangle(), 1) is None
    wg = cbp_dual(grid33(), 3)
    assert wg is not None
    assert all(v != 0 for v in wg.entries)
    assert len(kernel(eval_matrix(grid33(), 3).transpose())) == 1


def test_cbp_dual_witness_orthogonal():
    x = grid33()
    w = cbp_dual(x, 3)
    m = eval_matrix(x, 3).transpose()
    assert m.matvec(w.entries) == (Fraction(0),) * m.rows


# --- combined report --------------------------------------------------------


def test_cbp_grid():
    rep = cbp(grid33(), 3)
    assert rep.verdict and all(rep.per_method.values())
    assert rep.witness is not None
    rep4 = cbp(grid33(), 4)
    assert not rep4.verdict and not any(rep4.per_method.values())
    assert rep4.failing_point is not None


def test_cbp_singleton_convention():
    x = point_set([proj_point([1, 4, 2])])
    assert cbp(x, 0).verdict
    assert not cbp(x, 1).verdict
    assert not cbp(x, 3).verdict


def test_max_cbp_degree_examples():
    for s in (2, 3, 5, 8):
        assert max_cbp_degree(collinear(s)) == (s - 2, True)
    assert max_cbp_degree(grid33()) == (3, True)
    # three non-collinear points: r_X = 1, CBP(0) holds, so it is a CB scheme
    assert max_cbp_degree(triangle()) == (0, True)
    assert max_cbp_degree(general_quad()) == (1, True)


def test_max_cbp_degree_fast_agrees():
    rng = random.Random(55)
    for k in range(10):
        inst = gen_random(rng.randint(1, 3), rng.randint(2, 8), 6, seed=400 + k)
        x = inst.point_set
        assert max_cbp_degree(x) == max_cbp_degree(x, fast=True)


def test_max_cbp_degree_singleton_rejected():
    with pytest.raises(ValueError):
        max_cbp_degree(point_set([proj_point([1, 1])]))


# --- cross-method properties ------------------------------------------------


def small_corpus():
    instances = [
        collinear(2), collinear(4), collinear(6),
        triangle(), general_quad(), grid33(),
        gen_grid(2, 2).point_set, gen_grid(2, 3).point_set,
    ]
    rng = random.Random(999)
    for k in range(12):
        instances.append(gen_random(rng.randint(1, 3), rng.randint(2, 9), 8, seed=500 + k).point_set)
    l1 = flat_from_rows(3, [[1, 0, 0, 0], [0, 1, 0, 0]])
    l2 = flat_from_rows(3, [[0, 0, 1, 0], [0, 0, 0, 1]])
    for k in range(4):
        instances.append(gen_on_flats([l1, l2], [4, 4], seed=600 + k).point_set)
        instances.append(gen_on_flats([l1, l2], [5, 3], seed=700 + k).point_set)
    return instances


def test_four_methods_agree_on_corpus():
    for x in small_corpus():
        r_x = hf_full(x).reg_index
        for r in range(r_x + 1):
            rep = cbp(x, r)  # raises MethodDisagreement on any mismatch
            assert rep.per_method["hf"] == rep.per_method["alpha"]
            assert rep.per_method["hf"] == rep.per_method["divisibility"]
            assert rep.per_method["hf"] == rep.per_method["dual"]


def test_cbp_monotone_in_r():
    for x in small_corpus():
        if len(x) < 2:
            continue
        r_x = hf_full(x).reg_index
        verdicts = [cbp_hf(x, r) for r in range(r_x + 1)]
        for r in range(1, len(verdicts)):
            if verdicts[r]:
                assert verdicts[r - 1]


def test_cbp_implies_size_and_hf_bounds():
    for x in small_corpus():
        if len(x) < 2:
            continue
        h = hf_full(x)
        r_max = max_cbp_degree(x, fast=True)[0]
        for r in range(r_max + 1):
            assert len(x) >= r + 2
            for i in range(r + 1):
                assert h.value(i) + h.value(r - i) <= len(x)


def test_dual_dimension_identity():
    for x in small_corpus():
        r_x = hf_full(x).reg_index
        for r in range(r_x + 1):
            dim = len(kernel(eval_matrix(x, r).transpose()))
            assert dim == len(x) - hf(x, r)


def test_cbp_invariant_under_coordinate_change():
    x = point_set(
        [proj_point([0, 1, 0]), proj_point([1, 1, 1]), proj_point([1, 0, 1]), proj_point([0, 1, 1])]
    )
    moved, m = ensure_x0_nonvanishing(x, seed=11)
    r_x = hf_full(x).reg_index
    for r in range(r_x + 1):
        assert cbp(x, r).verdict == cbp(moved, r).verdict


def test_separator_space_dim_one_at_alpha_and_beyond():
    # the separator ideal has one dimension per degree from alpha to r_X
    x = grid33()
    r_x = hf_full(x).reg_index
    for p in x.labels:
        a = alpha(x, p)
        y = x.without(p)
        for i in range(a, r_x + 1):
            assert hf(x, i) - hf(y, i) == 1


def test_collinear_meets_size_bound_with_equality():
    # s = r+2 collinear points have CBP(r): the corollary bound is tight
    for r in (0, 1, 2, 4):
        inst = gen_collinear(r + 2, 2, seed=r)
        assert max_cbp_degree(inst.point_set, fast=True)[0] == r


def test_four_methods_agree_with_points_on_the_hyperplane():
    # sets straddling {x0 = 0}: the divisibility route must auto-fix the chart
    rng = random.Random(606)
    for k in range(8):
        pts = [proj_point([0] + [rng.randint(-3, 3) or 1 for _ in range(2)])]
        while len(pts) < rng.randint(3, 6):
            cand = [rng.randint(0, 1) and rng.randint(-3, 3) or 0 for _ in range(3)]
            if not any(cand):
                continue
            p = proj_point(cand)
            if p not in pts:
                pts.append(p)
        x = point_set(pts)
        assert any(p.coords[0] == 0 for p in x.points)
        r_x = hf_full(x).reg_index
        for r in range(r_x + 1):
            cbp(x, r)  # raises on disagreement


def test_cbp_with_fractional_coordinates():
    # four collinear points with non-integer coordinates: CBP(2) exactly
    pts = [proj_point([1, Fraction(k, 3), Fraction(k, 2)]) for k in range(4)]
    x = point_set(pts)
    assert max_cbp_degree(x) == (2, True)
    for r in range(hf_full(x).reg_index + 1):
        cbp(x, r)
