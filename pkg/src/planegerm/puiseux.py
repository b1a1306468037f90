"""Finite fractional power series in y and their substitution into f(x, y)."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import NamedTuple, Optional

from .arith import QQ, BiPoly, FieldElem, UniPoly, common_field, nth_root
from .errors import InputError

INF = math.inf


def _frac(e):
    return e if isinstance(e, Fraction) else Fraction(e)


def _coef(c):
    return c if isinstance(c, FieldElem) else QQ.coerce(c)


@dataclass(frozen=True)
class FracSeries:
    """sum a_k y^{e_k} with increasing rational e_k; known only below ``truncation``.

    ``truncation`` is None for a series that is exact (all further terms zero).
    """

    terms: tuple = ()
    truncation: Optional[Fraction] = None

    def __post_init__(self):
        cleaned = []
        last = None
        for e, c in self.terms:
            e, c = _frac(e), _coef(c)
            if not c:
                continue
            if last is not None and e <= last:
                raise InputError("series exponents must be strictly increasing")
            if e < 0:
                raise InputError("negative exponent in series")
            if self.truncation is not None and e >= self.truncation:
                continue
            cleaned.append((e, c))
            last = e
        object.__setattr__(self, "terms", tuple(cleaned))
        if self.truncation is not None:
            object.__setattr__(self, "truncation", _frac(self.truncation))

    @classmethod
    def from_dict(cls, d, truncation=None):
        return cls(tuple(sorted(((e, c) for e, c in d.items() if c), key=lambda t: t[0])), truncation)

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def monomial(cls, c, e):
        return cls(((e, c),))

    # -- structure ---------------------------------------------------------------
    @property
    def N(self):
        d = 1
        for e, _ in self.terms:
            d = lcm(d, e.denominator)
        return d

    def exponents(self):
        return [e for e, _ in self.terms]

    def coefficient(self, e):
        e = _frac(e)
        if self.truncation is not None and e >= self.truncation:
            raise InputError(f"coefficient at {e} is beyond the truncation {self.truncation}")
        for ee, c in self.terms:
            if ee == e:
                return c
        return QQ.zero

    def order(self):
        return self.terms[0][0] if self.terms else None

    def is_exact(self):
        return self.truncation is None

    def field(self):
        return common_field(*[c for _, c in self.terms])

    def truncate(self, T):
        """Terms with exponent < T; the result is known only below T."""
        T = _frac(T)
        t = T if self.truncation is None else min(T, self.truncation)
        return FracSeries(tuple((e, c) for e, c in self.terms if e < T), t)

    def prefix(self, xi):
        """Exact series of the terms strictly below xi (a truncated root as a polynomial)."""
        return FracSeries(tuple((e, c) for e, c in self.terms if e < xi))

    def append(self, c, e):
        e = _frac(e)
        if self.terms and e <= self.terms[-1][0]:
            raise InputError("appended exponent must exceed existing ones")
        return FracSeries(self.terms + ((e, c),), self.truncation)

    def __add__(self, other: "FracSeries"):
        d = {}
        for e, c in self.terms + other.terms:
            d[e] = d[e] + c if e in d else c
        t = _min_trunc(self.truncation, other.truncation)
        return FracSeries.from_dict(d, t)

    def __neg__(self):
        return FracSeries(tuple((e, -c) for e, c in self.terms), self.truncation)

    def scaled(self, s):
        return FracSeries(tuple((e, c * s) for e, c in self.terms), self.truncation)

    def eval_float(self, y):
        return sum(float(c) * y ** float(e) for e, c in self.terms)

    def __eq__(self, other):
        if not isinstance(other, FracSeries):
            return NotImplemented
        if self.truncation != other.truncation or len(self.terms) != len(other.terms):
            return False
        return all(e1 == e2 and not (c1 - c2) for (e1, c1), (e2, c2) in zip(self.terms, other.terms))

    def __hash__(self):
        return hash((self.exponents(), self.truncation))

    def to_str(self, var="y"):
        if not self.terms:
            s = "0"
        else:
            parts = []
            for e, c in self.terms:
                mono = var if e == 1 else f"{var}^({e})" if e.denominator != 1 else f"{var}^{e}"
                if e == 0:
                    mono = ""
                cs = str(c)
                if mono and cs == "1":
                    parts.append(mono)
                elif mono and cs == "-1":
                    parts.append("-" + mono)
                else:
                    parts.append(f"{cs}*{mono}" if mono else cs)
            s = " + ".join(parts).replace("+ -", "- ")
        if self.truncation is not None:
            s += f" + O({var}^({self.truncation}))"
        return s

    def __repr__(self):
        return f"FracSeries({self.to_str()})"


def _min_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass(frozen=True)
class DemiBranch:
    """Half-branch x = series(y), y >= 0; generic_tail marks a generic term c*y^xi."""

    series: FracSeries = field(default_factory=FracSeries)
    generic_tail: Optional[Fraction] = None

    def __post_init__(self):
        if self.generic_tail is not None:
            g = _frac(self.generic_tail)
            object.__setattr__(self, "generic_tail", g)
            if self.series.terms and self.series.terms[-1][0] >= g:
                raise InputError("generic tail must lie above every stored exponent")

    def allowable(self):
        o = self.series.order()
        return o is None or o >= 1


def as_series(g) -> FracSeries:
    if isinstance(g, DemiBranch):
        return g.series
    if isinstance(g, FracSeries):
        return g
    if g is None or g == 0:
        return FracSeries.zero()
    raise InputError(f"not a branch: {g!r}")


# -- fractional bivariate polynomials ---------------------------------------

@dataclass(frozen=True)
class FracBiPoly:
    """sum c_ij X^i Y^j with rational j.

    For a truncated substitution ``bounds`` lists (k, V) meaning the
    coefficient of X^k Y^j is unknown for j >= V; ``valid_below`` is the
    smallest such V.  Both are empty/None for exact expansions.
    """

    terms: dict
    valid_below: Optional[Fraction] = None
    bounds: tuple = ()

    def support(self):
        return sorted(self.terms, key=lambda k: (k[0], k[1]))

    def coeff(self, i, j):
        return self.terms.get((i, _frac(j)), QQ.zero)

    def eval_float(self, X, Y):
        return sum(float(c) * X ** i * Y ** float(j) for (i, j), c in self.terms.items())

    def __add__(self, o):
        d = dict(self.terms)
        for k, c in o.terms.items():
            d[k] = d[k] + c if k in d else c
        return FracBiPoly({k: c for k, c in d.items() if c}, _min_trunc(self.valid_below, o.valid_below),
                          _merge_bounds(self.bounds, o.bounds))

    def __mul__(self, o):
        d = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in o.terms.items():
                key = (i + k, j + l)
                d[key] = d[key] + a * b if key in d else a * b
        vb = _min_trunc(self.valid_below, o.valid_below)
        return FracBiPoly({k: c for k, c in d.items() if c}, vb, ((0, vb),) if vb is not None else ())

    def same_as(self, o):
        keys = set(self.terms) | set(o.terms)
        return all(not (self.coeff(*k) - o.coeff(*k)) for k in keys)

    def to_str(self):
        parts = []
        for (i, j) in sorted(self.terms, key=lambda k: (-k[0], k[1])):
            c = self.terms[(i, j)]
            mono = "*".join(
                s for s in (
                    "" if i == 0 else ("X" if i == 1 else f"X^{i}"),
                    "" if j == 0 else ("Y" if j == 1 else (f"Y^{j}" if j.denominator == 1 else f"Y^({j})")),
                ) if s
            )
            cs = str(c)
            parts.append(mono if cs == "1" and mono else (f"-{mono}" if cs == "-1" and mono else
                                                          (f"{cs}*{mono}" if mono else cs)))
        return " + ".join(parts).replace("+ -", "- ") or "0"


def _merge_bounds(a, b):
    d = dict(a)
    for k, v in b:
        d[k] = min(d.get(k, v), v)
    return tuple(sorted(d.items()))


# -- series arithmetic on {exponent: coefficient} dicts ------------------------

def _smul(a, b, cut):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            if cut is not None and e > cut:
                continue
            out[e] = out[e] + c1 * c2 if e in out else c1 * c2
    return {e: c for e, c in out.items() if c}


def _spow(a, n, cut, one):
    result = {Fraction(0): one}
    base = a
    while n:
        if n & 1:
            result = _smul(result, base, cut)
        n >>= 1
        if n:
            base = _smul(base, base, cut)
    return result


def _sadd(a, b, s=1):
    out = dict(a)
    for e, c in b.items():
        out[e] = out[e] + c * s if e in out else c * s
    return {e: c for e, c in out.items() if c}


def _binom(e: Fraction, k: int) -> Fraction:
    r = Fraction(1)
    for i in range(k):
        r = r * (e - i) / (i + 1)
    return r


def _sfracpow(u, e, cut):
    """u^e for a series u with positive leading coefficient."""
    e0 = min(u)
    c0 = u[e0]
    if c0.sign() <= 0:
        raise InputError("fractional power of a series with non-positive leading coefficient")
    v = {ex - e0: c / c0 for ex, c in u.items() if ex != e0}
    lead_e = e0 * e
    # c0^e through a real root extension
    if e.denominator == 1:
        ce = c0 ** int(e)
    else:
        ce = nth_root(c0, e.denominator) ** e.numerator
    if not v:
        return {lead_e: ce} if cut is None or lead_e <= cut else {}
    nu = min(v)
    rel_cut = None if cut is None else cut - lead_e
    if rel_cut is not None and rel_cut < 0:
        return {}
    kmax = int(rel_cut / nu) if rel_cut is not None else 0
    acc = {Fraction(0): ce.field.one}
    vk = {Fraction(0): ce.field.one}
    for k in range(1, kmax + 1):
        vk = _smul(vk, v, rel_cut)
        if not vk:
            break
        acc = _sadd(acc, vk, _binom(e, k))
    return {ex + lead_e: c * ce for ex, c in acc.items() if c}


def _compose(lam, u, cut):
    """lam(u(y)) for series lam (in y) and u = c y + ..., c > 0."""
    out = {}
    for e, c in lam.items():
        if e.denominator == 1:
            pw = _spow(u, int(e), cut, c.field.one)
        else:
            pw = _sfracpow(u, e, cut)
        out = _sadd(out, {ex: cc * c for ex, cc in pw.items()})
    return out


# -- operations ----------------------------------------------------------------

def substitute(f: BiPoly, lam, cut=None) -> FracBiPoly:
    """Expansion of f(X + lam(Y), Y).

    When lam is truncated at T the unknown tail O(Y^T) can only disturb the
    coefficient of X^k Y^j for j >= V(k), where
    V(k) = T + min over monomials x^a y^b of f with a > k of b + (a-k-1)*ord(lam).
    Terms at or beyond V(k) are dropped and the bounds are recorded.
    ``cut`` additionally drops every Y-exponent >= cut.
    """
    lam = as_series(lam)
    T = lam.truncation
    max_a = max((i for i, _ in f.terms), default=0)
    bounds = {}
    if T is not None:
        e0 = min(lam.order(), T) if lam.terms else T
        for k in range(max_a):
            bounds[k] = T + min(b + (a - k - 1) * e0 for (a, b) in f.terms if a > k)
    if cut is not None:
        cut = _frac(cut)
        for k in range(max_a + 1):
            bounds[k] = min(bounds.get(k, cut), cut)
    lim = max(bounds.values()) if bounds else None
    ser = {e: c for e, c in lam.terms}
    K = lam.field()
    one = K.one
    powers = [{Fraction(0): one}]
    for _ in range(max_a):
        powers.append(_smul(powers[-1], ser, lim))
    out = {}
    for (a, b), c in f.terms.items():
        for k in range(a + 1):
            coef = math.comb(a, k) * c
            vk = bounds.get(k)
            for e, v in powers[a - k].items():
                j = e + b
                if vk is not None and j >= vk:
                    continue
                key = (k, j)
                term = v * coef
                out[key] = out[key] + term if key in out else term
    return FracBiPoly({k: v for k, v in out.items() if v},
                      min(bounds.values()) if bounds else None,
                      tuple(sorted(bounds.items())))


class Contact(NamedTuple):
    value: object  # Fraction or math.inf
    determined: bool


def contact_order(l1, l2) -> Contact:
    """Smallest exponent where the two series differ."""
    a, b = as_series(l1), as_series(l2)
    T = _min_trunc(a.truncation, b.truncation)
    da = dict(a.terms)
    db = dict(b.terms)
    for e in sorted(set(da) | set(db)):
        if T is not None and e >= T:
            break
        ca, cb = da.get(e), db.get(e)
        if ca is None or cb is None or (ca - cb):
            return Contact(e, True)
    if T is None:
        return Contact(INF, True)
    return Contact(T, False)


def _lattice_den(*series):
    d = 1
    for s in series:
        for e in s:
            d = lcm(d, e.denominator)
    return d


def invert_reparametrization(w, T) -> FracSeries:
    """u with w(u(t)) = t through exponent T, for w = c*y + higher, c > 0."""
    w = as_series(w)
    T = _frac(T)
    if not w.terms or w.terms[0][0] != 1:
        raise InputError("reparametrization must start with a y^1 term")
    c = w.terms[0][1]
    if c.sign() <= 0:
        raise InputError("reparametrization must have a positive linear coefficient")
    if w.truncation is not None and w.truncation <= T:
        raise InputError(f"series known only below {w.truncation}; cannot invert through {T}")
    higher = {e: v for e, v in w.terms[1:]}
    cinv = c.inverse()
    u = {Fraction(1): cinv}
    for _ in range(10000):
        wu = _compose(higher, u, T) if higher else {}
        new = _sadd({Fraction(1): cinv}, {e: v * cinv for e, v in wu.items()}, -1)
        new = {e: v for e, v in new.items() if e <= T}
        if new.keys() == u.keys() and all(not (new[e] - u[e]) for e in new):
            break
        u = new
    return FracSeries.from_dict(u, T + Fraction(1, _lattice_den(u, higher)))


def compose_series(lam, u, T) -> FracSeries:
    """lam(u(t)) through exponent T, for u = c*t + ..., c > 0."""
    lam, u = as_series(lam), as_series(u)
    d = _compose(dict(lam.terms), dict(u.terms), _frac(T))
    return FracSeries.from_dict(d, _frac(T) + Fraction(1, _lattice_den(d, dict(u.terms), dict(lam.terms))))


@dataclass(frozen=True)
class LinearMap:
    """(x, y) -> (a x + b y, c x + d y)."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def det(self):
        return self.a * self.d - self.b * self.c


@dataclass(frozen=True)
class XShear:
    """(x, y) -> (x + p(y), y)."""

    p: UniPoly


def image_branch(sigma, gamma, T) -> DemiBranch:
    """The demi-branch sigma(gamma), exact through exponent T."""
    gb = gamma if isinstance(gamma, DemiBranch) else DemiBranch(as_series(gamma))
    lam = gb.series
    T = _frac(T)
    if isinstance(sigma, XShear):
        shear = FracSeries(tuple((Fraction(k), c) for k, c in enumerate(sigma.p.coeffs)))
        return DemiBranch(lam + shear, gb.generic_tail)
    a, b, c, d = (Fraction(v) for v in (sigma.a, sigma.b, sigma.c, sigma.d))
    if not sigma.det():
        raise InputError("linear map is singular")
    # new y is w(y) = d y + c lam(y)
    w = lam.scaled(c) + FracSeries.monomial(d, 1)
    if not w.terms or w.terms[0][0] != 1 or w.terms[0][1].sign() <= 0:
        if w.terms and w.terms[0][0] < 1:
            raise InputError("image branch is tangent to the x-axis")
        raise InputError("image branch is tangent to the x-axis or leaves the upper half plane")
    Tw = T
    if lam.truncation is not None:
        step = Fraction(1, _lattice_den(lam.exponents(), [lam.truncation]))
        Tw = min(T, lam.truncation - step)
    u = invert_reparametrization(FracSeries(w.terms), Tw)
    xs = compose_series(lam.scaled(a) + FracSeries.monomial(b, 1), u, Tw)
    trunc = xs.truncation if lam.truncation is None else min(xs.truncation, lam.truncation)
    img = FracSeries(xs.terms, trunc)
    if img.terms and img.terms[0][0] < 1:
        raise InputError("image branch is not allowable (tangent to the x-axis)")
    tail = gb.generic_tail
    if tail is not None and img.terms and img.terms[-1][0] >= tail:
        tail = None
    return DemiBranch(img, tail)
