"""Exact log-concavity toolkit for univariate polynomials.

Everything is exact rational / dyadic arithmetic; no floating point is used
in any decision procedure.
"""

from .errors import (
    CapExceeded,
    DegreeTooSmall,
    ExponentOverflow,
    FatalInconsistency,
    FormatError,
    LogconcaveError,
    PreconditionFailed,
    ResourceLimit,
    ShapeError,
    ZeroPolynomial,
)
from .families import (
    IdentityVerdict,
    MultilinearH,
    check_exponents,
    check_g,
    family_exponents,
    gen_f,
    gen_g,
    gen_h,
    verify_substitution_identity,
)
from .geometry import (
    LogPoint,
    PointSet,
    convex_hull_vertices,
    format_pointset,
    is_convexly_independent,
    max_convex_chain,
    minkowski_sum,
    orientation,
    parse_pointset,
    point_as_dict,
    upper_envelope,
)
from .limits import LIMITS, Limits, load_env_limits, set_limits
from .oracle import (
    BestFound,
    ExperimentConfig,
    brute_convexly_independent,
    brute_max_convex_subset,
    brute_max_convolution,
    brute_minkowski,
    random_kurtz_polynomial,
    random_lifting_expression,
    random_sps_expression,
    search_extremal_kurtz,
)
from .polynomials import (
    Coefficient,
    ConditionReport,
    NewtonReport,
    Polynomial,
    SparsePoly,
    check_kurtz,
    check_newton,
    check_strong,
    check_tau_logconcave,
    format_coefficient,
    format_polynomial,
    format_sparse,
    parse_coefficient,
    parse_polynomial,
    parse_signed_coeffs,
    parse_sparse,
    sturm_distinct_real_roots,
)
from .sps import (
    BoundsReport,
    LiftingArtifacts,
    LiftingVerdict,
    SpsExpression,
    SpsParams,
    Theorem2Verdict,
    WitnessReport,
    bounds_report,
    build_lifting,
    expand,
    format_sps,
    max_product_table,
    params,
    parse_sps,
    sparse_factor_witness,
    split_products,
    verify_lifting,
    verify_theorem2,
)

__all__ = [
    "LIMITS",
    "Limits",
    "load_env_limits",
    "set_limits",
    "LogconcaveError",
    "FormatError",
    "DegreeTooSmall",
    "ZeroPolynomial",
    "ResourceLimit",
    "ExponentOverflow",
    "CapExceeded",
    "ShapeError",
    "PreconditionFailed",
    "FatalInconsistency",
    "Coefficient",
    "Polynomial",
    "SparsePoly",
    "NewtonReport",
    "ConditionReport",
    "check_newton",
    "check_tau_logconcave",
    "check_kurtz",
    "check_strong",
    "sturm_distinct_real_roots",
    "parse_coefficient",
    "format_coefficient",
    "parse_polynomial",
    "parse_sparse",
    "parse_signed_coeffs",
    "format_polynomial",
    "format_sparse",
    "LogPoint",
    "PointSet",
    "orientation",
    "minkowski_sum",
    "convex_hull_vertices",
    "upper_envelope",
    "is_convexly_independent",
    "max_convex_chain",
    "parse_pointset",
    "format_pointset",
    "point_as_dict",
    "SpsExpression",
    "SpsParams",
    "Theorem2Verdict",
    "WitnessReport",
    "LiftingArtifacts",
    "LiftingVerdict",
    "BoundsReport",
    "expand",
    "params",
    "max_product_table",
    "sparse_factor_witness",
    "verify_theorem2",
    "split_products",
    "build_lifting",
    "verify_lifting",
    "bounds_report",
    "parse_sps",
    "format_sps",
    "MultilinearH",
    "IdentityVerdict",
    "family_exponents",
    "check_exponents",
    "gen_g",
    "check_g",
    "gen_f",
    "gen_h",
    "verify_substitution_identity",
    "ExperimentConfig",
    "BestFound",
    "brute_convexly_independent",
    "brute_max_convex_subset",
    "brute_minkowski",
    "brute_max_convolution",
    "random_kurtz_polynomial",
    "random_sps_expression",
    "random_lifting_expression",
    "search_extremal_kurtz",
]

__version__ = "0.1.0"
