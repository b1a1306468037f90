"""Exact arithmetic: rationals, polynomials, real algebraic numbers and fields."""
from fractions import Fraction

from ..errors import InputError
from .bipoly import BiPoly, bipoly_gcd, squarefree_factor_bipoly
from .field import (
    QQ,
    FieldElem,
    NumberField,
    common_field,
    compositum,
    field_of,
    minimal_polynomial,
    nth_root,
    qq,
    real_roots,
    real_roots_with_mult,
    sort_real,
)
from .poly import UniPoly
from .realalg import RealAlg, isolate_real_roots_q, sign_at

Rat = Fraction


def isolate_real_roots(p: UniPoly):
    """Real roots with multiplicities, ascending.

    Over Q the roots are RealAlg values; over a number field they are
    FieldElem values in (extensions of) that field.
    """
    if p.field is None:
        return isolate_real_roots_q(p)
    return real_roots_with_mult(p)


def distinct_complex_root_count(p: UniPoly) -> int:
    if p.is_zero():
        raise InputError("zero polynomial")
    return p.distinct_root_count()


__all__ = [
    "BiPoly", "FieldElem", "NumberField", "QQ", "Rat", "RealAlg", "UniPoly",
    "bipoly_gcd", "common_field", "compositum", "distinct_complex_root_count",
    "field_of", "isolate_real_roots", "minimal_polynomial", "nth_root", "qq",
    "real_roots", "real_roots_with_mult", "sign_at", "sort_real",
    "squarefree_factor_bipoly",
]
