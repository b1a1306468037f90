"""Dense univariate polynomials over Q or over a real number field.

Coefficients are stored in ascending degree.  Over Q they are ``Fraction``;
over a number field they are ``FieldElem`` values of that field.
"""
from __future__ import annotations

from fractions import Fraction

from ..errors import InputError


def _q(c):
    return c if isinstance(c, Fraction) else Fraction(c)


class UniPoly:
    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs=(), field=None):
        self.field = field
        if field is None:
            cs = [_q(c) for c in coeffs]
        else:
            cs = [field.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- construction helpers -------------------------------------------
    @classmethod
    def monomial(cls, deg, c=1, field=None):
        zero = 0 if field is None else field.zero
        return cls([zero] * deg + [c], field)

    @classmethod
    def from_roots(cls, roots, field=None):
        p = cls([1], field)
        for r in roots:
            p = p * cls([-r, 1], field)
        return p

    def _zero(self):
        return Fraction(0) if self.field is None else self.field.zero

    def _like(self, coeffs):
        return UniPoly(coeffs, self.field)

    # -- basic properties -----------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    __bool__ = lambda self: bool(self.coeffs)

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else self._zero()

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self._zero()

    def low_degree(self):
        """Lowest exponent with nonzero coefficient."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        raise InputError("zero polynomial has no low degree")

    def support(self):
        return [k for k, c in enumerate(self.coeffs) if c]

    # -- arithmetic ------------------------------------------------------
    def _wrap(self, other):
        if isinstance(other, UniPoly):
            return other
        return self._like([other])

    def __add__(self, other):
        other = self._wrap(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return self._like([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return self._like([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return self._like([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return self._like([])
        out = [self._zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = self._like([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return self._like([]), self
        quo = [self._zero()] * (dq + 1)
        inv_lead = 1 / other.lead if self.field is None else other.lead.inverse()
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1]
            if not c:
                continue
            c = c * inv_lead
            quo[k] = c
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * b
        return self._like(quo), self._like(rem[: len(other.coeffs) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            other = self._wrap(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    # -- evaluation / calculus --------------------------------------------
    def __call__(self, x):
        acc = self._zero() if not isinstance(x, UniPoly) else self._like([])
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return self._like([k * c for k, c in enumerate(self.coeffs)][1:])

    def monic(self):
        if not self.coeffs:
            return self
        inv = 1 / self.lead if self.field is None else self.lead.inverse()
        return self * inv

    def shift(self, a):
        """p(z + a)."""
        return self(self._like([a, 1]))

    def scale(self, a):
        """p(a z)."""
        out, pw = [], None
        for k, c in enumerate(self.coeffs):
            pw = (a ** k) if k else 1
            out.append(c * pw)
        return self._like(out)

    def map_coeffs(self, fn, field=None):
        return UniPoly([fn(c) for c in self.coeffs], field)

    def gcd(self, other):
        a, b = self, other
        while b.coeffs:
            a, b = b, a % b
        return a.monic()

    def squarefree_part(self):
        g = self.gcd(self.derivative())
        return (self // g).monic()

    def squarefree_decomposition(self):
        """Yun's algorithm: list of (factor, multiplicity), factors monic."""
        if not self.coeffs:
            raise InputError("zero polynomial")
        if self.degree == 0:
            return []
        out = []
        f = self.monic()
        d = f.derivative()
        a0 = f.gcd(d)
        b = f // a0
        c = d // a0
        dd = c - b.derivative()
        k = 1
        while b.degree > 0:
            a = b.gcd(dd)
            if a.degree > 0:
                out.append((a, k))
            b = b // a
            c = dd // a
            dd = c - b.derivative()
            k += 1
        return out

    def distinct_root_count(self):
        if not self.coeffs:
            raise InputError("zero polynomial")
        return self.degree - self.gcd(self.derivative()).degree

    # -- display -----------------------------------------------------------
    def __repr__(self):
        return f"UniPoly({self.to_str()})"

    def to_str(self, var="z"):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            parts.append(_term(c, mono))
        s = " + ".join(parts)
        return s.replace("+ -", "- ")


def _term(c, mono):
    text = str(c)
    if not mono:
        return text
    if text == "1":
        return mono
    if text == "-1":
        return "-" + mono
    if any(ch in text[1:] for ch in "+-") or " " in text:
        text = f"({text})"
    return f"{text}*{mono}"


def content_primitive(p: UniPoly):
    """Integer primitive form of a rational polynomial with positive lead."""
    from math import gcd, lcm

    den = 1
    for c in p.coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if p.lead < 0:
        g = -g
    return UniPoly([Fraction(v, g) for v in ints])
