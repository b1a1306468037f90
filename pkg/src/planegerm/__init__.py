"""Invariants of real analytic plane curve germs.

Newton polygons relative to a branch, order functions, edge polynomials,
real tree models, Fukui invariants and weighted homogeneous classification.
"""
__version__ = "0.1.0"

from .arith import BiPoly, RealAlg, UniPoly
from .errors import (
    GermError,
    InputError,
    InsufficientTruncation,
    NotMiniRegular,
    ParseError,
    ResourceLimit,
)
from .parser import parse, parse_branch, parse_poly
from .polygon import (
    boundary_function,
    edge_polynomial,
    initial_newton_polynomial,
    legendre_roundtrip_check,
    order_function,
    relative_polygon,
)
from .puiseux import DemiBranch, FracSeries
from .tree import blow_analytic_equivalent, build_real_tree, canonical_code

__all__ = [
    "BiPoly", "DemiBranch", "FracSeries", "GermError", "InputError",
    "InsufficientTruncation", "NotMiniRegular", "ParseError", "RealAlg",
    "ResourceLimit", "UniPoly", "blow_analytic_equivalent", "boundary_function",
    "build_real_tree", "canonical_code", "edge_polynomial",
    "initial_newton_polynomial", "legendre_roundtrip_check", "order_function",
    "parse", "parse_branch", "parse_poly", "relative_polygon",
]
