"""Exact-arithmetic lab for Cayley-Bacharach geometry.

Rational point sets in projective space: Hilbert functions, separators,
the four equivalent Cayley-Bacharach decision procedures, minimum
plane-configuration covers, and a property-testing harness with a
counterexample search mode.
"""

from .cbp import (
    CBPReport,
    ChartError,
    DualVector,
    MethodDisagreement,
    Separator,
    alpha,
    cbp,
    cbp_alpha,
    cbp_dual,
    cbp_fast,
    cbp_hf,
    cbp_separator_div,
    max_cbp_degree,
    separator,
)
from .cover import (
    DEFAULT_EXHAUSTIVE_LIMIT,
    CoverResult,
    InexhaustiveSearchError,
    PlaneConfiguration,
    classify,
    config_contains,
    config_dim,
    config_len,
    greedy_cover,
    lies_on_config_dim,
    matroid_flats,
    min_cover,
    min_cover_dim,
    plane_configuration,
)
from .hilbert import HilbertFunction, delta_hf, eval_matrix, hf, hf_full, monomials
from .projective import (
    Flat,
    PointSet,
    ProjPoint,
    apply_matrix,
    are_skew,
    contains,
    empty_point_set,
    ensure_x0_nonvanishing,
    flat_from_rows,
    intersect,
    invert_change,
    is_split,
    point_set,
    proj_point,
    span,
)
from .qlinalg import QMatrix, RrefResult, inverse, kernel, rank, rref, solve

__version__ = "0.1.0"

__all__ = [
    "CBPReport",
    "ChartError",
    "CoverResult",
    "DEFAULT_EXHAUSTIVE_LIMIT",
    "DualVector",
    "Flat",
    "HilbertFunction",
    "InexhaustiveSearchError",
    "MethodDisagreement",
    "PlaneConfiguration",
    "PointSet",
    "ProjPoint",
    "QMatrix",
    "RrefResult",
    "Separator",
    "alpha",
    "apply_matrix",
    "are_skew",
    "cbp",
    "cbp_alpha",
    "cbp_dual",
    "cbp_fast",
    "cbp_hf",
    "cbp_separator_div",
    "classify",
    "config_contains",
    "config_dim",
    "config_len",
    "contains",
    "delta_hf",
    "empty_point_set",
    "ensure_x0_nonvanishing",
    "eval_matrix",
    "flat_from_rows",
    "greedy_cover",
    "hf",
    "hf_full",
    "intersect",
    "inverse",
    "invert_change",
    "is_split",
    "kernel",
    "lies_on_config_dim",
    "matroid_flats",
    "max_cbp_degree",
    "min_cover",
    "min_cover_dim",
    "monomials",
    "plane_configuration",
    "point_set",
    "proj_point",
    "rank",
    "rref",
    "separator",
    "solve",
    "span",
]
