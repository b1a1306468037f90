"""Real algebraic numbers over Q: Sturm isolation, refinement, exact signs."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

import sympy

from ..errors import InputError
from .poly import UniPoly, content_primitive

_Z = sympy.Symbol("z")

# -- interval helpers ------------------------------------------------------

def imul(a, b):
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(ps), max(ps))


def eval_interval(p: UniPoly, lo, hi):
    """Enclosure of p over [lo, hi] by interval Horner."""
    acc = (Fraction(0), Fraction(0))
    for c in reversed(p.coeffs):
        acc = imul(acc, (lo, hi))
        acc = (acc[0] + c, acc[1] + c)
    return acc


def _sgn(v):
    return (v > 0) - (v < 0)


# -- Sturm machinery ------------------------------------------------------

def sturm_sequence(p: UniPoly):
    seq = [p, p.derivative()]
    while seq[-1].degree > 0:
        r = -(seq[-2] % seq[-1])
        if r.is_zero():
            break
        seq.append(r)
    return seq


def _variations(seq, x):
    signs = [s for s in (_sgn(q(x)) for q in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(seq, lo, hi):
    """Number of distinct real roots in (lo, hi]."""
    return _variations(seq, lo) - _variations(seq, hi)


def root_bound(p: UniPoly) -> Fraction:
    lead = abs(p.lead)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


def _split_point(p, lo, hi):
    for num, den in ((1, 2), (1, 3), (2, 3), (2, 5), (3, 5), (3, 7), (4, 7)):
        m = lo + (hi - lo) * num / den
        if p(m):
            return m
    raise AssertionError("no split point found")  # pragma: no cover


def isolate_squarefree(p: UniPoly):
    """Disjoint open intervals (lo, hi), one per real root, endpoints not roots."""
    if p.degree < 1:
        return []
    seq = sturm_sequence(p)
    b = root_bound(p) + 1
    out = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = count_roots(seq, lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        m = _split_point(p, lo, hi)
        stack.append((m, hi))
        stack.append((lo, m))
    out.sort()
    return out


def factor_rational(p: UniPoly):
    """Irreducible factorization over Q: list of (primitive factor, multiplicity)."""
    if p.is_zero():
        raise InputError("zero polynomial")
    sp = sympy.Poly(list(reversed(p.coeffs)), _Z, domain="QQ")
    _, facs = sp.factor_list()
    out = []
    for fac, mult in facs:
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(fac.all_coeffs())]
        out.append((content_primitive(UniPoly(cs)), mult))
    return out


# -- RealAlg ----------------------------------------------------------------

@total_ordering
@dataclass(frozen=True, eq=False)
class RealAlg:
    """A real root of ``poly`` isolated by the open interval (lo, hi).

    ``poly`` is primitive with positive leading coefficient and has exactly
    one real root in the interval; the endpoints are not roots.
    """

    poly: UniPoly
    lo: Fraction
    hi: Fraction

    @classmethod
    def rational(cls, v):
        v = Fraction(v)
        return cls(UniPoly([-v.numerator, v.denominator]), v - 1, v + 1)

    @property
    def degree(self):
        return self.poly.degree

    def is_rational(self):
        return self.poly.degree == 1

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("not rational")
        return -self.poly.coeffs[0] / self.poly.coeffs[1]

    def refined(self, width) -> "RealAlg":
        """Return the same number with an isolating interval of width <= width."""
        width = Fraction(width)
        if self.is_rational():
            v = self.rational_value()
            if self.hi - self.lo <= width:
                return self
            return RealAlg(self.poly, v - width / 2, v + width / 2)
        lo, hi = self.lo, self.hi
        slo = _sgn(self.poly(lo))
        while hi - lo > width:
            m = (lo + hi) / 2
            sm = _sgn(self.poly(m))
            if sm == 0:
                return RealAlg.rational(m)
            if sm == slo:
                lo = m
            else:
                hi = m
        return RealAlg(self.poly, lo, hi)

    def bisect(self) -> "RealAlg":
        return self.refined((self.hi - self.lo) / 2)

    def __float__(self):
        if self.is_rational():
            return float(self.rational_value())
        r = self.refined(Fraction(1, 2 ** 60))
        return float((r.lo + r.hi) / 2)

    def sign(self):
        return sign_at(UniPoly([0, 1]), self)

    def _cmp(self, other: "RealAlg"):
        if self.poly == other.poly:
            if self.is_rational():
                return 0
            lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
            if lo < hi and count_roots(sturm_sequence(self.poly), lo, hi) > 0:
                return 0
        a, b = self, other
        for _ in range(100000):
            if a.hi <= b.lo:
                return -1
            if b.hi <= a.lo:
                return 1
            if a.is_rational() and b.is_rational():
                return _sgn(a.rational_value() - b.rational_value())
            a, b = a.bisect(), b.bisect()
        raise AssertionError("comparison did not terminate")  # pragma: no cover

    def __eq__(self, other):
        return isinstance(other, RealAlg) and self._cmp(other) == 0

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __hash__(self):
        return hash(self.poly)

    def __repr__(self):
        if self.is_rational():
            return f"RealAlg({self.rational_value()})"
        return f"RealAlg(root of {self.poly.to_str()} in ({self.lo}, {self.hi}) ~ {float(self):.12g})"


def sign_at(p: UniPoly, a: RealAlg) -> int:
    """Exact sign of p(a) for p over Q."""
    if p.is_zero():
        return 0
    if a.is_rational():
        return _sgn(p(a.rational_value()))
    g = p.gcd(a.poly)
    if g.degree > 0 and count_roots(sturm_sequence(g), a.lo, a.hi) > 0:
        return 0
    cur = a
    while True:
        lo, hi = eval_interval(p, cur.lo, cur.hi)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        cur = cur.bisect()


def isolate_real_roots_q(p: UniPoly):
    """Real roots of a rational polynomial, ascending, with multiplicities."""
    if p.is_zero():
        raise InputError("cannot isolate roots of the zero polynomial")
    roots = []
    for fac, mult in factor_rational(p):
        for lo, hi in isolate_squarefree(fac):
            if fac.degree == 1:
                roots.append((RealAlg.rational(-fac.coeffs[0] / fac.coeffs[1]), mult))
            else:
                roots.append((RealAlg(fac, lo, hi), mult))
    roots.sort(key=lambda rm: _SortKey(rm[0]))
    return roots


class _SortKey:
    __slots__ = ("a",)

    def __init__(self, a):
        self.a = a

    def __lt__(self, other):
        return self.a._cmp(other.a) < 0
