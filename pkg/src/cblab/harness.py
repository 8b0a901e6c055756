"""Instance generators and property verifiers for the Cayley-Bacharach lab.

Each generator is reproducible from its provenance record. Each verifier
takes an Instance and returns a VerdictReport with one of four statuses:

  pass          - the property held (or its hypothesis was not met)
  fail          - a genuine violation; the report carries a replayable instance
  skipped       - the verifier's preconditions were not met
  inconclusive  - a cover search hit the exhaustive limit; never a silent pass

The counterexample search hunts for CBP(r) sets of size at most (d+1)r+1
that do not lie on a plane configuration of dimension d; any hit is
re-certified with all four CBP procedures before being reported.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .cbp import cbp, cbp_fast, max_cbp_degree
from .cover import (
    DEFAULT_EXHAUSTIVE_LIMIT,
    PlaneConfiguration,
    config_contains,
    greedy_cover,
    lies_on_config_dim,
    min_cover_dim,
    plane_configuration,
)
from .hilbert import eval_matrix, hf, hf_full
from .projective import (
    Flat,
    PointSet,
    ProjPoint,
    are_skew,
    flat_from_rows,
    intersect,
    is_split,
    point_set,
    proj_point,
    span,
)
from .qlinalg import QMatrix, kernel, rank
from .rand import SplitMix, stream


@dataclass(frozen=True)
class Instance:
    """A generated point set; provenance fully determines it."""

    point_set: PointSet
    provenance: dict
    known_config: PlaneConfiguration | None = None


@dataclass(frozen=True)
class VerdictReport:
    prop: str
    instance_id: int
    provenance: dict
    status: str  # pass | fail | skipped | inconclusive
    details: dict

    def to_obj(self) -> dict:
        return {
            "property": self.prop,
            "instance": self.instance_id,
            "provenance": self.provenance,
            "status": self.status,
            "details": self.details,
        }


def _report(prop, inst_id, inst, status, **details) -> VerdictReport:
    return VerdictReport(prop, inst_id, inst.provenance, status, details)


def make_instance(ps: PointSet, provenance: dict, known_config=None) -> Instance:
    if known_config is not None and not config_contains(known_config, ps):
        raise ValueError("known configuration does not contain every point")
    return Instance(ps, provenance, known_config)


# --- basic generators -------------------------------------------------------


def _draw_int_vector(sm: SplitMix, length: int, height: int) -> list[int]:
    while True:
        v = [sm.int_in(-height, height) for _ in range(length)]
        if any(v):
            return v


def gen_collinear(s: int, n: int, seed: int) -> Instance:
    """s distinct points on a seeded line in P^n."""
    if s < 1 or n < 1:
        raise ValueError("need s >= 1 points in P^n with n >= 1")
    sm = stream(f"collinear:{s}:{n}", seed)
    a = _draw_int_vector(sm, n + 1, 9)
    while True:
        b = _draw_int_vector(sm, n + 1, 9)
        if rank(QMatrix.from_rows([a, b])) == 2:
            break
    params: list[int] = []
    while len(params) < s:
        t = sm.int_in(-(5 + s), 5 + s)
        if t not in params:
            params.append(t)
    pts = [proj_point([ai + t * bi for ai, bi in zip(a, b)]) for t in params]
    line = span([proj_point(a), proj_point(b)])
    return make_instance(
        point_set(pts),
        {"generator": "collinear", "params": {"s": s, "n": n}, "seed": seed},
        plane_configuration([line]),
    )


def gen_grid(d: int, e: int) -> Instance:
    """The d*e intersection points of d vertical and e horizontal lines in P^2.

    This is the complete intersection of two totally split plane curves of
    degrees d and e, the classical CBP(d+e-3) example.
    """
    if d < 1 or e < 1:
        raise ValueError("grid needs d, e >= 1")
    pts = [proj_point([1, j, k]) for j in range(d) for k in range(e)]
    lines = [flat_from_rows(2, [[1, j, 0], [0, 0, 1]]) for j in range(d)]
    lines += [flat_from_rows(2, [[1, 0, k], [0, 1, 0]]) for k in range(e)]
    return make_instance(
        point_set(pts),
        {"generator": "grid", "params": {"d": d, "e": e}, "seed": 0},
        plane_configuration(lines),
    )


def gen_on_flats(
    flats: list[Flat], counts: list[int], seed: int, height: int = 20
) -> Instance:
    """Seeded random points on each flat; all points globally distinct."""
    if len(flats) != len(counts) or any(c < 1 for c in counts):
        raise ValueError("one positive count per flat")
    sm = stream(f"on_flats:{tuple(counts)}", seed)
    pts: list[ProjPoint] = []
    for flat, count in zip(flats, counts):
        basis_rows = [flat.basis.row(i) for i in range(flat.basis.rows)]
        placed = 0
        attempts = 0
        while placed < count:
            attempts += 1
            if attempts > 500 * count:
                raise RuntimeError("could not draw enough distinct points on a flat")
            coeffs = [sm.int_in(-height, height) for _ in basis_rows]
            vec = [
                sum(c * row[k] for c, row in zip(coeffs, basis_rows))
                for k in range(flat.ambient_n + 1)
            ]
            if not any(vec):
                continue
            p = proj_point(vec)
            if p in pts:
                continue
            pts.append(p)
            placed += 1
    return make_instance(
        point_set(pts),
        {
            "generator": "on_flats",
            "params": {
                "flats": [_flat_obj(f) for f in flats],
                "counts": list(counts),
                "height": height,
            },
            "seed": seed,
        },
        plane_configuration(flats),
    )


def gen_random(n: int, size: int, height: int, seed: int) -> Instance:
    """Distinct seeded points with integer coordinates in [-height, height]."""
    if size < 1 or height < 1 or n < 1:
        raise ValueError("need size >= 1, height >= 1, n >= 1")
    sm = stream(f"random:{n}:{size}:{height}", seed)
    pts: list[ProjPoint] = []
    attempts = 0
    while len(pts) < size:
        attempts += 1
        if attempts > 2000 * size:
            raise RuntimeError("coordinate box too small for that many distinct points")
        p = proj_point(_draw_int_vector(sm, n + 1, height))
        if p not in pts:
            pts.append(p)
    return make_instance(
        point_set(pts),
        {"generator": "random", "params": {"n": n, "size": size, "height": height}, "seed": seed},
    )


def _flat_obj(f: Flat) -> list[list[str]]:
    return [[str(v) for v in f.basis.row(i)] for i in range(f.basis.rows)]


def _flat_from_obj(rows: list[list[str]]) -> Flat:
    return flat_from_rows(len(rows[0]) - 1, [[Fraction(v) for v in row] for row in rows])


# --- standard configurations ------------------------------------------------


def _unit(n: int, j: int) -> list[int]:
    return [int(k == j) for k in range(n + 1)]


def make_split_lines(ambient: int, k: int) -> list[Flat]:
    """k lines on disjoint coordinate pairs; split by construction."""
    if 2 * k > ambient + 1:
        raise ValueError(f"{k} split lines need ambient dimension >= {2 * k - 1}")
    return [
        flat_from_rows(ambient, [_unit(ambient, 2 * i), _unit(ambient, 2 * i + 1)])
        for i in range(k)
    ]


def make_split_plane_line(ambient: int) -> list[Flat]:
    """A 2-plane and a line on disjoint coordinate blocks (split)."""
    if ambient < 4:
        raise ValueError("a split 2-plane and line need ambient dimension >= 4")
    plane = flat_from_rows(ambient, [_unit(ambient, 0), _unit(ambient, 1), _unit(ambient, 2)])
    line = flat_from_rows(ambient, [_unit(ambient, 3), _unit(ambient, 4)])
    return [plane, line]


def make_skew_lines_p3() -> list[Flat]:
    """Three pairwise disjoint lines in P^3 (skew but not split)."""
    l1 = flat_from_rows(3, [[1, 0, 0, 0], [0, 1, 0, 0]])
    l2 = flat_from_rows(3, [[0, 0, 1, 0], [0, 0, 0, 1]])
    l3 = flat_from_rows(3, [[1, 0, 1, 0], [0, 1, 0, 1]])
    return [l1, l2, l3]


def make_meeting_lines(ambient: int) -> list[Flat]:
    """Two lines meeting exactly at the unit point e0."""
    if ambient < 2:
        raise ValueError("two distinct meeting lines need ambient dimension >= 2")
    l1 = flat_from_rows(ambient, [_unit(ambient, 0), _unit(ambient, 1)])
    l2 = flat_from_rows(ambient, [_unit(ambient, 0), _unit(ambient, 2)])
    return [l1, l2]


def make_meeting_plane_line(ambient: int) -> list[Flat]:
    """A 2-plane and a line meeting exactly at the unit point e0."""
    if ambient < 3:
        raise ValueError("a plane meeting a line at a point needs ambient dimension >= 3")
    plane = flat_from_rows(ambient, [_unit(ambient, 0), _unit(ambient, 1), _unit(ambient, 2)])
    line = flat_from_rows(ambient, [_unit(ambient, 0), _unit(ambient, 3)])
    return [plane, line]


def gen_structured(kind: str, ambient: int, counts: list[int], seed: int, include_meet: bool = False) -> Instance:
    """Points on a named standard configuration (replayable by kind)."""
    if kind == "split_lines":
        flats = make_split_lines(ambient, len(counts))
    elif kind == "split_plane_line":
        flats = make_split_plane_line(ambient)
    elif kind == "skew_lines":
        flats = make_skew_lines_p3()
        ambient = 3
    elif kind == "meeting_lines":
        flats = make_meeting_lines(ambient)
    elif kind == "meeting_plane_line":
        flats = make_meeting_plane_line(ambient)
    else:
        raise ValueError(f"unknown configuration kind {kind!r}")
    base = gen_on_flats(flats, counts, seed)
    ps = base.point_set
    if include_meet:
        meet = intersect(flats[0], flats[1])
        if meet is None or meet.proj_dim != 0:
            raise ValueError("include_meet needs flats meeting at a single point")
        ps = ps.add(proj_point(meet.basis.row(0)))
    return make_instance(
        ps,
        {
            "generator": kind,
            "params": {"ambient": ambient, "counts": list(counts), "include_meet": include_meet},
            "seed": seed,
        },
        base.known_config,
    )


def replay(provenance: dict) -> Instance:
    """Rebuild the instance a provenance record describes."""
    gen = provenance["generator"]
    params = provenance.get("params", {})
    seed = provenance.get("seed", 0)
    if gen == "collinear":
        return gen_collinear(params["s"], params["n"], seed)
    if gen == "grid":
        return gen_grid(params["d"], params["e"])
    if gen == "random":
        return gen_random(params["n"], params["size"], params["height"], seed)
    if gen == "on_flats":
        flats = [_flat_from_obj(rows) for rows in params["flats"]]
        return gen_on_flats(flats, params["counts"], seed, params.get("height", 20))
    if gen in ("split_lines", "split_plane_line", "skew_lines", "meeting_lines", "meeting_plane_line"):
        return gen_structured(
            gen, params["ambient"], params["counts"], seed, params.get("include_meet", False)
        )
    raise ValueError(f"unknown generator {gen!r}")


# --- verifiers --------------------------------------------------------------


def _max_degree(x: PointSet) -> int:
    return max_cbp_degree(x, fast=True)[0]


def verify_line_theorem(inst: Instance, inst_id: int = 0, limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> VerdictReport:
    """CBP(r) sets with at most 2r+1 points lie on a line."""
    x = inst.point_set
    if len(x) < 2:
        return _report("line_theorem", inst_id, inst, "skipped", reason="needs >= 2 points")
    span_dim = span(list(x.points)).proj_dim
    if span_dim == 1:
        # the conclusion already holds; no need to price the hypothesis
        if len(x) <= limit and min_cover_dim(x, limit) != 1:
            return _report("line_theorem", inst_id, inst, "fail", size=len(x), certificate_mismatch=True)
        return _report("line_theorem", inst_id, inst, "pass", size=len(x), span_dim=1)
    r = _max_degree(x)
    if len(x) > 2 * r + 1:
        return _report("line_theorem", inst_id, inst, "pass", r=r, size=len(x), vacuous=True)
    return _report("line_theorem", inst_id, inst, "fail", r=r, size=len(x), span_dim=span_dim)


def _dim_upper_bound(inst: Instance) -> int:
    """Cheapest certified upper bound for the minimal cover dimension."""
    x = inst.point_set
    bounds = [max(1, span(list(x.points)).proj_dim)]
    if inst.known_config is not None:
        bounds.append(inst.known_config.dimension)
    return min(bounds)


def verify_cover_conjecture(
    inst: Instance, d: int, inst_id: int = 0, limit: int = DEFAULT_EXHAUSTIVE_LIMIT
) -> VerdictReport:
    """CBP(r) sets with at most (d+1)r+1 points lie on a dimension-d configuration."""
    prop = f"cover_conjecture_d{d}"
    x = inst.point_set
    if len(x) < 2:
        return _report(prop, inst_id, inst, "skipped", reason="needs >= 2 points")
    upper = _dim_upper_bound(inst)
    if upper <= d:
        # the conclusion holds for every degree; skip pricing the hypothesis
        return _report(prop, inst_id, inst, "pass", size=len(x), dim_upper_bound=upper)
    r_max = _max_degree(x)
    applicable = [r for r in range(r_max + 1) if len(x) <= (d + 1) * r + 1]
    if not applicable:
        return _report(prop, inst_id, inst, "pass", r_max=r_max, size=len(x), vacuous=True)
    if len(x) <= limit:
        mcd = min_cover_dim(x, limit)
        status = "pass" if mcd <= d else "fail"
        return _report(prop, inst_id, inst, status, r_values=applicable, size=len(x), min_cover_dim=mcd)
    g = greedy_cover(x)
    if g.total_dim <= d:
        return _report(
            prop, inst_id, inst, "pass",
            r_values=applicable, size=len(x), dim_upper_bound=g.total_dim, greedy=True,
        )
    return _report(
        prop, inst_id, inst, "inconclusive",
        r_values=applicable, size=len(x), greedy_upper_bound=g.total_dim,
    )


def verify_complement(inst: Instance, inst_id: int = 0) -> VerdictReport:
    """Removing a length-k sub-configuration from a CBP(r) set leaves CBP(r-k)."""
    x = inst.point_set
    if inst.known_config is None or len(x) < 2:
        return _report("complement", inst_id, inst, "skipped", reason="needs a known configuration")
    r = _max_degree(x)
    flats = inst.known_config.flats
    checked = 0
    for k in range(1, min(len(flats), r) + 1):
        for idxs in combinations(range(len(flats)), k):
            removed = set()
            for i in idxs:
                removed.update(x.labels_on(flats[i]))
            remaining = [l for l in x.labels if l not in removed]
            if not remaining:
                continue
            rest = x.subset(remaining)
            checked += 1
            if not cbp_fast(rest, r - k):
                return _report(
                    "complement", inst_id, inst, "fail",
                    r=r, k=k, flats=list(idxs), remaining=len(rest),
                )
    if checked == 0:
        return _report("complement", inst_id, inst, "skipped", reason="no applicable sub-configuration", r=r)
    return _report("complement", inst_id, inst, "pass", r=r, checked=checked)


def verify_split_equivalence(inst: Instance, inst_id: int = 0) -> VerdictReport:
    """On a split configuration, CBP(r) holds iff it holds piecewise."""
    x = inst.point_set
    cfg = inst.known_config
    if cfg is None or len(x) < 2:
        return _report("split_equivalence", inst_id, inst, "skipped", reason="needs a known configuration")
    if not is_split(cfg.flats):
        return _report("split_equivalence", inst_id, inst, "skipped", reason="configuration is not split")
    pieces = [x.labels_on(f) for f in cfg.flats]
    if any(not piece for piece in pieces):
        return _report("split_equivalence", inst_id, inst, "skipped", reason="a flat misses the set")
    r_x = hf_full(x).reg_index
    for r in range(r_x):
        whole = cbp_fast(x, r)
        parts = [cbp_fast(x.subset(piece), r) for piece in pieces]
        if whole != all(parts):
            return _report(
                "split_equivalence", inst_id, inst, "fail",
                r=r, whole=whole, parts=parts,
            )
    return _report("split_equivalence", inst_id, inst, "pass", r_range=r_x)


def verify_skew_counts(inst: Instance, inst_id: int = 0) -> VerdictReport:
    """On a skew configuration, a CBP(r) set loads every flat or the
    configuration is long: each flat has >= max(k, r+2) points, or some
    flat has < k points and k >= r+2."""
    x = inst.point_set
    cfg = inst.known_config
    if cfg is None or cfg.length < 2 or len(x) < 2:
        return _report("skew_counts", inst_id, inst, "skipped", reason="needs a known configuration of length >= 2")
    if not are_skew(cfg.flats):
        return _report("skew_counts", inst_id, inst, "skipped", reason="configuration is not skew")
    counts = [len(x.labels_on(f)) for f in cfg.flats]
    if any(c == 0 for c in counts):
        return _report("skew_counts", inst_id, inst, "skipped", reason="a flat misses the set")
    k = cfg.length
    r_max = _max_degree(x)
    for r in range(r_max + 1):
        loaded = all(c >= max(k, r + 2) for c in counts)
        sparse_long = any(c < k for c in counts) and k >= r + 2
        if not (loaded or sparse_long):
            return _report("skew_counts", inst_id, inst, "fail", r=r, k=k, counts=counts)
    return _report("skew_counts", inst_id, inst, "pass", r_max=r_max, k=k, counts=counts)


def verify_meeting_pair(inst: Instance, inst_id: int = 0) -> VerdictReport:
    """Two flats meeting at a point p: the first piece, possibly with p
    adjoined, retains CBP(r)."""
    x = inst.point_set
    cfg = inst.known_config
    if cfg is None or cfg.length != 2 or len(x) < 2:
        return _report("meeting_pair", inst_id, inst, "skipped", reason="needs a known configuration of length 2")
    meet = intersect(cfg.flats[0], cfg.flats[1])
    if meet is None or meet.proj_dim != 0:
        return _report("meeting_pair", inst_id, inst, "skipped", reason="flats do not meet at a single point")
    p = proj_point(meet.basis.row(0))
    piece_labels = x.labels_on(cfg.flats[0])
    if not piece_labels or not x.labels_on(cfg.flats[1]):
        return _report("meeting_pair", inst_id, inst, "skipped", reason="a flat misses the set")
    piece = x.subset(piece_labels)
    piece_with_p = piece.add(p)
    r_max = _max_degree(x)
    swapped_ok = []
    other = x.subset(x.labels_on(cfg.flats[1]))
    other_with_p = other.add(p)
    for r in range(r_max + 1):
        if not (cbp_fast(piece, r) or cbp_fast(piece_with_p, r)):
            return _report(
                "meeting_pair", inst_id, inst, "fail",
                r=r, piece_size=len(piece), p_in_set=p in x.points,
            )
        swapped_ok.append(cbp_fast(other, r) or cbp_fast(other_with_p, r))
    return _report(
        "meeting_pair", inst_id, inst, "pass",
        r_max=r_max, p_in_set=p in x.points, swapped_holds=all(swapped_ok),
    )


def verify_inductive_bound(
    inst: Instance, d: int, inst_id: int = 0, limit: int = DEFAULT_EXHAUSTIVE_LIMIT
) -> VerdictReport:
    """A CBP(r) set within the size bound that avoids every dimension-(d-1)
    configuration has at least dr+2 points. Valid for d <= 5, where the
    cover conjecture is settled for d-1."""
    prop = f"inductive_bound_d{d}"
    x = inst.point_set
    if d > 5:
        return _report(prop, inst_id, inst, "skipped", reason="unsettled below-dimension case")
    if len(x) < 2:
        return _report(prop, inst_id, inst, "skipped", reason="needs >= 2 points")
    if _dim_upper_bound(inst) <= d - 1:
        return _report(prop, inst_id, inst, "pass", size=len(x), vacuous=True)
    r_max = _max_degree(x)
    applicable = [r for r in range(r_max + 1) if len(x) <= (d + 1) * r + 1]
    if not applicable:
        return _report(prop, inst_id, inst, "pass", r_max=r_max, size=len(x), vacuous=True)
    if len(x) > limit:
        return _report(prop, inst_id, inst, "inconclusive", size=len(x))
    mcd = min_cover_dim(x, limit)
    if mcd <= d - 1:
        return _report(prop, inst_id, inst, "pass", size=len(x), min_cover_dim=mcd, vacuous=True)
    for r in applicable:
        if len(x) < d * r + 2:
            return _report(
                prop, inst_id, inst, "fail",
                r=r, size=len(x), min_cover_dim=mcd, required=d * r + 2,
            )
    return _report(prop, inst_id, inst, "pass", r_values=applicable, size=len(x), min_cover_dim=mcd)


def verify_lower_bounds(inst: Instance, inst_id: int = 0) -> VerdictReport:
    """CBP(r) forces |X| >= r+2 and HF(i) + HF(r-i) <= |X| for 0 <= i <= r."""
    x = inst.point_set
    if len(x) < 2:
        return _report("lower_bounds", inst_id, inst, "skipped", reason="needs >= 2 points")
    r_max = _max_degree(x)
    h = hf_full(x)
    for r in range(r_max + 1):
        if len(x) < r + 2:
            return _report("lower_bounds", inst_id, inst, "fail", r=r, size=len(x), bound="size")
        for i in range(r + 1):
            if h.value(i) + h.value(r - i) > len(x):
                return _report("lower_bounds", inst_id, inst, "fail", r=r, i=i, bound="hf-symmetry")
    return _report("lower_bounds", inst_id, inst, "pass", r_max=r_max, size=len(x))


def verify_dual_dimension(inst: Instance, inst_id: int = 0) -> VerdictReport:
    """The degree -r dual space has dimension |X| - HF(r) for 0 <= r <= r_X."""
    x = inst.point_set
    if len(x) < 1:
        return _report("dual_dimension", inst_id, inst, "skipped", reason="empty set")
    r_x = hf_full(x).reg_index
    for r in range(r_x + 1):
        dim = len(kernel(eval_matrix(x, r).transpose()))
        if dim != len(x) - hf(x, r):
            return _report("dual_dimension", inst_id, inst, "fail", r=r, kernel_dim=dim)
    return _report("dual_dimension", inst_id, inst, "pass", r_range=r_x + 1)


def verify_method_agreement(inst: Instance, inst_id: int = 0) -> VerdictReport:
    """All four CBP procedures agree at every degree up to r_X, and the
    verdicts are monotone in r."""
    x = inst.point_set
    if len(x) < 2:
        return _report("method_agreement", inst_id, inst, "skipped", reason="needs >= 2 points")
    r_x = hf_full(x).reg_index
    verdicts = []
    for r in range(r_x + 1):
        try:
            verdicts.append(cbp(x, r).verdict)
        except Exception as exc:  # a MethodDisagreement is a fail, not a crash
            return _report("method_agreement", inst_id, inst, "fail", r=r, error=str(exc))
    for r in range(1, len(verdicts)):
        if verdicts[r] and not verdicts[r - 1]:
            return _report("method_agreement", inst_id, inst, "fail", r=r, monotonicity=verdicts)
    fast_best = max_cbp_degree(x, fast=True)[0]
    best = max((r for r, v in enumerate(verdicts) if v), default=-1)
    if best != fast_best:
        return _report("method_agreement", inst_id, inst, "fail", best=best, fast_best=fast_best)
    return _report("method_agreement", inst_id, inst, "pass", verdicts=verdicts)


VERIFIERS = {
    "line_theorem": verify_line_theorem,
    "complement": verify_complement,
    "split_equivalence": verify_split_equivalence,
    "skew_counts": verify_skew_counts,
    "meeting_pair": verify_meeting_pair,
    "lower_bounds": verify_lower_bounds,
    "dual_dimension": verify_dual_dimension,
    "method_agreement": verify_method_agreement,
}


# --- suite running ----------------------------------------------------------


def derive_seed(base_seed: int, index: int) -> int:
    sm = SplitMix(base_seed)
    sm.next_u64()
    return (sm.next_u64() ^ SplitMix(index).next_u64()) & ((1 << 32) - 1)


def expand_instances(config: dict) -> list[Instance]:
    """Expand the generator specs of a suite config into concrete instances."""
    base_seed = config.get("seed", 0)
    out: list[Instance] = []
    for spec in config.get("instances", []):
        kind = spec["kind"]
        count = spec.get("count", 1)
        for i in range(count):
            seed = derive_seed(base_seed, len(out))
            if kind == "collinear":
                out.append(gen_collinear(spec["s"], spec.get("ambient", 2), seed))
            elif kind == "grid":
                out.append(gen_grid(spec["d"], spec["e"]))
            elif kind == "random":
                out.append(
                    gen_random(spec.get("ambient", 3), spec["size"], spec.get("height", 10), seed)
                )
            elif kind in ("split_lines", "split_plane_line", "skew_lines", "meeting_lines", "meeting_plane_line"):
                out.append(
                    gen_structured(
                        kind,
                        spec.get("ambient", 3),
                        spec["counts"],
                        seed,
                        spec.get("include_meet", False),
                    )
                )
            else:
                raise ValueError(f"unknown instance kind {kind!r}")
    return out


ALL_PROPERTIES = [
    "method_agreement",
    "lower_bounds",
    "dual_dimension",
    "line_theorem",
    "cover_conjecture",
    "inductive_bound",
    "complement",
    "split_equivalence",
    "skew_counts",
    "meeting_pair",
]


@dataclass
class SuiteResult:
    config: dict
    reports: list[VerdictReport] = field(default_factory=list)

    @property
    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "skipped": 0, "inconclusive": 0}
        for rep in self.reports:
            out[rep.status] += 1
        return out

    @property
    def failed(self) -> bool:
        return self.counts["fail"] > 0

    def to_json_lines(self) -> str:
        return "\n".join(json.dumps(r.to_obj(), sort_keys=True) for r in self.reports) + "\n"

    def summary_text(self) -> str:
        per_prop: dict[str, dict[str, int]] = {}
        for rep in self.reports:
            row = per_prop.setdefault(rep.prop, {"pass": 0, "fail": 0, "skipped": 0, "inconclusive": 0})
            row[rep.status] += 1
        width = max((len(p) for p in per_prop), default=8)
        lines = [f"{'property'.ljust(width)}  pass  fail  skip  inconcl"]
        for prop in sorted(per_prop):
            row = per_prop[prop]
            lines.append(
                f"{prop.ljust(width)}  {row['pass']:4d}  {row['fail']:4d}  {row['skipped']:4d}  {row['inconclusive']:7d}"
            )
        totals = self.counts
        lines.append(
            f"{'TOTAL'.ljust(width)}  {totals['pass']:4d}  {totals['fail']:4d}  {totals['skipped']:4d}  {totals['inconclusive']:7d}"
        )
        return "\n".join(lines)


def run_suite(config: dict) -> SuiteResult:
    """Run every requested property on every generated instance.

    Deterministic in the config: instances expand in listed order, reports
    are ordered by (instance id, property)."""
    limit = config.get("cover_limit", DEFAULT_EXHAUSTIVE_LIMIT)
    props = config.get("properties", "all")
    if props == "all":
        props = ALL_PROPERTIES
    conj_dims = config.get("conjecture_dims", [1, 2, 3, 4])
    ind_dims = config.get("inductive_dims", [2, 3, 4])
    instances = expand_instances(config)
    result = SuiteResult(config)
    for inst_id, inst in enumerate(instances):
        for prop in props:
            if prop == "cover_conjecture":
                for d in conj_dims:
                    result.reports.append(verify_cover_conjecture(inst, d, inst_id, limit))
            elif prop == "inductive_bound":
                for d in ind_dims:
                    result.reports.append(verify_inductive_bound(inst, d, inst_id, limit))
            elif prop == "line_theorem":
                result.reports.append(verify_line_theorem(inst, inst_id, limit))
            elif prop in VERIFIERS:
                result.reports.append(VERIFIERS[prop](inst, inst_id))
            else:
                raise ValueError(f"unknown property {prop!r}")
    return result


def default_suite_config(seed: int = 7, scale: int = 1) -> dict:
    """A mixed corpus touching every verifier; scale multiplies counts."""
    return {
        "seed": seed,
        "properties": "all",
        "conjecture_dims": [1, 2, 3, 4],
        "inductive_dims": [2, 3, 4],
        "instances": [
            {"kind": "collinear", "s": 4, "ambient": 2, "count": 2 * scale},
            {"kind": "collinear", "s": 6, "ambient": 3, "count": 2 * scale},
            {"kind": "grid", "d": 2, "e": 2},
            {"kind": "grid", "d": 2, "e": 3},
            {"kind": "grid", "d": 3, "e": 3},
            {"kind": "split_lines", "ambient": 3, "counts": [4, 4], "count": 2 * scale},
            {"kind": "split_lines", "ambient": 5, "counts": [4, 4, 4], "count": 2 * scale},
            {"kind": "split_plane_line", "ambient": 4, "counts": [6, 4], "count": 2 * scale},
            {"kind": "skew_lines", "counts": [4, 4, 4], "count": 2 * scale},
            {"kind": "meeting_lines", "ambient": 2, "counts": [4, 4], "count": scale},
            {"kind": "meeting_lines", "ambient": 3, "counts": [5, 4], "include_meet": True, "count": scale},
            {"kind": "meeting_plane_line", "ambient": 3, "counts": [6, 4], "count": scale},
            {"kind": "random", "ambient": 2, "size": 6, "height": 8, "count": 2 * scale},
            {"kind": "random", "ambient": 3, "size": 8, "height": 8, "count": 2 * scale},
        ],
    }


# --- counterexample search --------------------------------------------------


@dataclass
class SearchResult:
    d: int
    r: int
    trials: int
    seed: int
    candidates: int = 0
    hits: list[Instance] = field(default_factory=list)
    inconclusive: list[Instance] = field(default_factory=list)

    def summary_obj(self) -> dict:
        return {
            "d": self.d,
            "r": self.r,
            "trials": self.trials,
            "seed": self.seed,
            "cbp_candidates": self.candidates,
            "hits": len(self.hits),
            "inconclusive": len(self.inconclusive),
        }


def _search_candidate(sm: SplitMix, d: int, r: int, trial: int, seed: int) -> Instance | None:
    """One seeded candidate point set, biased toward CBP-rich structures."""
    cap = (d + 1) * r + 1
    roll = sm.below(100)
    sub = derive_seed(seed, trial)
    if roll < 40:
        # points on a split block configuration with near-threshold counts
        k = 1 + sm.below(3)
        dims = [2 if sm.below(4) == 0 else 1 for _ in range(k)]
        ambient = sum(dim + 1 for dim in dims) - 1
        counts = [sm.int_in(max(1, r), r + 3) for _ in range(k)]
        if sum(counts) > cap:
            return None
        flats = []
        offset = 0
        for dim in dims:
            rows = [_unit(ambient, offset + j) for j in range(dim + 1)]
            flats.append(flat_from_rows(ambient, rows))
            offset += dim + 1
        return gen_on_flats(flats, counts, sub, height=6)
    if roll < 60:
        s = sm.int_in(2, max(2, cap))
        return gen_collinear(s, sm.int_in(1, 3), sub)
    if roll < 72:
        dd = sm.int_in(1, 4)
        ee = sm.int_in(1, 4)
        if dd * ee > cap:
            return None
        return gen_grid(dd, ee)
    if roll < 86:
        kind = ("skew_lines", "meeting_lines", "meeting_plane_line")[sm.below(3)]
        if kind == "skew_lines":
            counts = [sm.int_in(2, max(2, r + 2)) for _ in range(3)]
            ambient = 3
        elif kind == "meeting_lines":
            counts = [sm.int_in(2, max(2, r + 2)) for _ in range(2)]
            ambient = 3
        else:
            counts = [sm.int_in(3, max(3, 2 * r + 2)), sm.int_in(2, max(2, r + 2))]
            ambient = 3
        if sum(counts) > cap:
            return None
        meet = kind != "skew_lines" and bool(sm.below(2))
        return gen_structured(kind, ambient, counts, sub, include_meet=meet)
    size = sm.int_in(2, max(2, cap))
    return gen_random(sm.int_in(2, 4), size, sm.int_in(2, 8), sub)


def counterexample_search(
    d: int, r: int, trials: int, seed: int, cover_limit: int = DEFAULT_EXHAUSTIVE_LIMIT
) -> SearchResult:
    """Hunt for CBP(r) sets of size <= (d+1)r+1 not on a dimension-d configuration.

    Candidates are filtered with the Hilbert-function route; a hit is
    re-certified with all four procedures. Inconclusive cover searches are
    returned separately, never dropped.
    """
    if d < 1 or r < 0 or trials < 0:
        raise ValueError("need d >= 1, r >= 0, trials >= 0")
    sm = stream(f"search:{d}:{r}", seed)
    result = SearchResult(d, r, trials, seed)
    cap = (d + 1) * r + 1
    for trial in range(trials):
        inst = _search_candidate(sm, d, r, trial, seed)
        if inst is None:
            continue
        x = inst.point_set
        if len(x) < 2 or len(x) > cap:
            continue
        if not cbp_fast(x, r):
            continue
        result.candidates += 1
        if _dim_upper_bound(inst) <= d:
            continue
        if len(x) <= cover_limit:
            if lies_on_config_dim(x, d, cover_limit):
                continue
            if cbp(x, r).verdict:  # full four-way certification of the headline
                result.hits.append(inst)
        else:
            if greedy_cover(x).total_dim <= d:
                continue
            result.inconclusive.append(inst)
    return result
