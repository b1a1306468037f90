"""Real number fields Q(theta) with a fixed real embedding.

Each field is a simple extension of Q by one real algebraic generator.  Nested
extensions are flattened with a primitive element, and every field remembers
how the generators of the fields it was built from embed into it, so values
flow from a field to any of its extensions by plain coercion.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import sympy

from ..errors import InputError, ResourceLimit
from .poly import UniPoly
from .realalg import (
    RealAlg,
    eval_interval,
    factor_rational,
    isolate_squarefree,
)

DEFAULT_MAX_DEPTH = 16
DEFAULT_MAX_DEGREE = 96

_T, _Zs = sympy.symbols("t z")


def _sgn(v):
    return (v > 0) - (v < 0)


class NumberField:
    """Q(theta) with theta a real root of an irreducible rational polynomial."""

    _ids = itertools.count()

    def __init__(self, generator: RealAlg, depth=0, images=None):
        self.generator = generator
        self.minpoly = generator.poly
        self.degree = max(generator.poly.degree, 1)
        self.depth = depth
        self.images = dict(images or {})
        self.uid = next(NumberField._ids)
        self._theta = generator  # refinement cache
        self.zero = FieldElem(self, (Fraction(0),) * self.degree)
        self.one = self.coerce(1)
        self.images[self] = self.gen() if self.degree > 1 else None

    def __repr__(self):
        if self.degree == 1:
            return "QQ"
        return f"NumberField({self.minpoly.to_str('t')}, ~{float(self.generator):.10g})"

    def is_rational(self):
        return self.degree == 1

    def gen(self):
        if self.degree == 1:
            return FieldElem(self, (self.generator.rational_value(),))
        return FieldElem(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.degree - 2))

    # -- element construction ------------------------------------------------
    def _reduce(self, coeffs):
        p = UniPoly(coeffs)
        if self.degree > 1:
            p = p % self.minpoly
            cs = list(p.coeffs)
        else:
            cs = [p(self.generator.rational_value())] if p.coeffs else []
        cs += [Fraction(0)] * (self.degree - len(cs))
        return tuple(cs)

    def from_poly(self, p: UniPoly):
        return FieldElem(self, self._reduce(p.coeffs))

    def coerce(self, c):
        if isinstance(c, FieldElem):
            if c.field is self:
                return c
            return self.embed(c)
        if isinstance(c, RealAlg):
            if c.is_rational():
                c = c.rational_value()
            else:
                raise InputError("coerce an irrational RealAlg with field_of")
        return FieldElem(self, (Fraction(c),) + (Fraction(0),) * (self.degree - 1))

    def embed(self, c: "FieldElem"):
        src = c.field
        if src.degree == 1:
            return self.coerce(c.coeffs[0])
        img = self.images.get(src)
        if img is None:
            raise InputError(f"{src!r} does not embed into {self!r}")
        acc = self.zero
        for a in reversed(c.coeffs):
            acc = acc * img + a
        return acc

    def contains(self, other: "NumberField"):
        return other.degree == 1 or other in self.images

    # -- real embedding --------------------------------------------------------
    def theta_interval(self, width):
        if self._theta.hi - self._theta.lo > width:
            self._theta = self._theta.refined(width)
        return self._theta.lo, self._theta.hi


class FieldElem:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = tuple(coeffs)

    # -- arithmetic ------------------------------------------------------------
    def _lift(self, o):
        """Both operands in the larger of the two fields; (None, None) if o is foreign."""
        if isinstance(o, FieldElem):
            if o.field is self.field:
                return self, o
            if self.field.contains(o.field):
                return self, self.field.embed(o)
            if o.field.contains(self.field):
                return o.field.embed(self), o
            raise InputError("elements of unrelated fields")
        if isinstance(o, (int, Fraction)):
            return self, self.field.coerce(o)
        return None, None

    def __add__(self, o):
        a, b = self._lift(o)
        if a is None:
            return NotImplemented
        return FieldElem(a.field, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return FieldElem(self.field, tuple(x * o for x in self.coeffs))
        a, b = self._lift(o)
        if a is None:
            return NotImplemented
        K = a.field
        if K.degree == 1:
            return FieldElem(K, (a.coeffs[0] * b.coeffs[0],))
        prod = UniPoly(a.coeffs) * UniPoly(b.coeffs)
        return FieldElem(K, K._reduce(prod.coeffs))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        K = self.field
        if K.degree == 1:
            return FieldElem(K, (1 / self.coeffs[0],))
        # extended Euclid: s*a + t*m = 1
        a, m = UniPoly(self.coeffs), K.minpoly
        r0, r1 = m, a
        s0, s1 = UniPoly([]), UniPoly([1])
        while r1.coeffs:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        inv = s0 * (1 / r0.lead)
        return FieldElem(K, K._reduce(inv.coeffs))

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            return self * (1 / Fraction(o))
        return self * o.inverse()

    def __rtruediv__(self, o):
        return self.inverse() * o

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == o
        if isinstance(o, FieldElem):
            if o.field is self.field:
                return self.coeffs == o.coeffs
            return not (self - o) if _related(self.field, o.field) else self.compare(o) == 0
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field.uid, self.coeffs))

    # -- real structure --------------------------------------------------------
    def is_rational(self):
        return not any(self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("not rational")
        return self.coeffs[0]

    def interval(self, width=Fraction(1, 2 ** 20)):
        """Rational enclosure of the value with width at most ``width``."""
        if self.is_rational():
            return self.coeffs[0], self.coeffs[0]
        p = UniPoly(self.coeffs)
        w = Fraction(width)
        while True:
            lo, hi = self.field.theta_interval(w)
            a, b = eval_interval(p, lo, hi)
            if b - a <= width:
                return a, b
            w /= 16

    def sign(self):
        if not self:
            return 0
        if self.is_rational():
            return _sgn(self.coeffs[0])
        w = Fraction(1, 2 ** 8)
        while True:
            a, b = self.interval(w)
            if a > 0:
                return 1
            if b < 0:
                return -1
            w /= 256

    def __float__(self):
        if self.is_rational():
            return float(self.coeffs[0])
        a, b = self.interval(Fraction(1, 2 ** 64))
        return float((a + b) / 2)

    def compare(self, other):
        """Exact comparison with a FieldElem of any field, a RealAlg or a rational."""
        if isinstance(other, (int, Fraction)) or (
            isinstance(other, FieldElem) and _related(self.field, other.field)
        ):
            return (self - other).sign()
        if isinstance(other, RealAlg):
            other = field_of(other).gen()
        # unrelated fields: separate by refinement first, exact test last
        w = Fraction(1, 2 ** 16)
        for _ in range(6):
            a, b = self.interval(w)
            c, d = other.interval(w)
            if b < c:
                return -1
            if d < a:
                return 1
            w /= 2 ** 16
        L = compositum(self.field, other.field)
        return (L.coerce(self) - L.coerce(other)).sign()

    def __lt__(self, o):
        return self.compare(o) < 0

    def __le__(self, o):
        return self.compare(o) <= 0

    def __gt__(self, o):
        return self.compare(o) > 0

    def __ge__(self, o):
        return self.compare(o) >= 0

    def to_realalg(self) -> RealAlg:
        """Minimal polynomial over Q and an isolating interval."""
        if self.is_rational():
            return RealAlg.rational(self.coeffs[0])
        mp = minimal_polynomial(self)
        from .realalg import count_roots, sturm_sequence

        seq = sturm_sequence(mp)
        w = Fraction(1, 2 ** 10)
        while True:
            a, b = self.interval(w)
            lo, hi = a - w, b + w
            if mp(lo) and mp(hi) and count_roots(seq, lo, hi) == 1:
                return RealAlg(mp, lo, hi)
            w /= 16

    def __repr__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        return f"<{UniPoly(self.coeffs).to_str('θ')} ~ {float(self):.10g}>"

    def __str__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        return f"{float(self):.10g}"


def _related(K, L):
    return K.contains(L) or L.contains(K)


QQ = NumberField(RealAlg.rational(0))


def field_of(a: RealAlg) -> NumberField:
    """The field Q(a) with a as generator."""
    if a.is_rational():
        return QQ
    return NumberField(a)


def qq(c) -> FieldElem:
    return QQ.coerce(c)


def common_field(*elems):
    """A field containing all given elements (compositum when needed)."""
    K = QQ
    for e in elems:
        F = e.field if isinstance(e, FieldElem) else QQ
        if K.contains(F):
            continue
        if F.contains(K):
            K = F
        else:
            K = compositum(K, F)
    return K


# -- minimal polynomials ---------------------------------------------------

def minimal_polynomial(x: FieldElem) -> UniPoly:
    """Primitive minimal polynomial over Q of a field element."""
    if x.is_rational():
        v = x.coeffs[0]
        return UniPoly([-v.numerator, v.denominator])
    K = x.field
    mp = sympy.Poly(list(reversed(K.minpoly.coeffs)), _T, domain="QQ")
    xp = sympy.Poly(list(reversed(x.coeffs)), _T, domain="QQ")
    r = sympy.Poly(_Zs - xp.as_expr(), _T, _Zs, domain="QQ")
    res = sympy.Poly(mp.as_expr(), _T, _Zs, domain="QQ").resultant(r)
    res = sympy.Poly(res.as_expr(), _Zs, domain="QQ")
    for f, _m in factor_rational(_sym_to_uni(res)):
        if not _eval_elem(f, x):
            return f
    raise AssertionError("minimal polynomial not found")  # pragma: no cover


def _eval_elem(p: UniPoly, x: FieldElem) -> FieldElem:
    acc = x.field.zero
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def _sym_to_uni(sp) -> UniPoly:
    return UniPoly([Fraction(int(c.p), int(c.q)) for c in reversed(sp.all_coeffs())])


# -- real roots over a field -------------------------------------------------

def _as_field_poly(S: UniPoly):
    K = S.field if S.field is not None else QQ
    if S.field is None:
        S = UniPoly([QQ.coerce(c) for c in S.coeffs], QQ)
    return K, S


def real_roots(S: UniPoly, max_depth=DEFAULT_MAX_DEPTH, max_degree=DEFAULT_MAX_DEGREE):
    """Distinct real roots of S (coefficients in a number field), ascending.

    Each root is a FieldElem in a field containing S's coefficient field.
    Roots are returned without multiplicity; see real_roots_with_mult.
    """
    K, S = _as_field_poly(S)
    if S.is_zero():
        raise InputError("cannot isolate roots of the zero polynomial")
    if S.degree < 1:
        return []
    S = S.squarefree_part()
    if S.degree == 1:
        return [-S.coeffs[0] / S.coeffs[1]]
    if K.is_rational():
        roots = _real_roots_q(UniPoly([c.coeffs[0] for c in S.coeffs]), K, max_depth, max_degree)
    else:
        roots = _real_roots_ext(S, K, max_depth, max_degree)
    return sort_real(roots)


def real_roots_with_mult(S: UniPoly, **kw):
    """Real roots with multiplicities from the squarefree decomposition."""
    K, S = _as_field_poly(S)
    if S.is_zero():
        raise InputError("cannot isolate roots of the zero polynomial")
    out = []
    for fac, k in S.squarefree_decomposition():
        out += [(r, k) for r in real_roots(fac, **kw)]
    order = sort_real([r for r, _ in out])
    mult = {id(r): k for r, k in out}
    return [(r, mult[id(r)]) for r in order]


def _new_field(gen: RealAlg, parent: NumberField, max_depth, max_degree):
    depth = parent.depth + 1
    if depth > max_depth:
        raise ResourceLimit(f"extension depth limit {max_depth} exceeded")
    if gen.poly.degree > max_degree:
        raise ResourceLimit(f"extension degree {gen.poly.degree} exceeds limit {max_degree}")
    return NumberField(gen, depth=depth)


def _real_roots_q(p: UniPoly, K, max_depth, max_degree):
    out = []
    for fac, _m in factor_rational(p):
        if fac.degree == 1:
            out.append(QQ.coerce(-fac.coeffs[0] / fac.coeffs[1]))
            continue
        for lo, hi in isolate_squarefree(fac):
            L = _new_field(RealAlg(fac, lo, hi), K, max_depth, max_degree)
            out.append(L.gen())
    return out


def _norm_resultant(S: UniPoly, K: NumberField, k: int):
    """Res_t(m(t), S(z - k t, t)) as a rational UniPoly in z."""
    expr = 0
    for i, c in enumerate(S.coeffs):
        ct = sum(a * _T ** j for j, a in enumerate(c.coeffs))
        expr += ct * (_Zs - k * _T) ** i
    mp = sympy.Poly(sum(a * _T ** j for j, a in enumerate(K.minpoly.coeffs)), _T, _Zs, domain="QQ")
    res = mp.resultant(sympy.Poly(expr, _T, _Zs, domain="QQ"))
    return _sym_to_uni(sympy.Poly(res.as_expr(), _Zs, domain="QQ"))


def _real_roots_ext(S: UniPoly, K: NumberField, max_depth, max_degree):
    for k in (0, 1, -1, 2, -2, 3, -3, 4, 5, 7):
        R = _norm_resultant(S, K, k)
        if R.degree == R.squarefree_part().degree:
            break
    else:  # pragma: no cover
        raise ResourceLimit("no separating shift found for norm resultant")
    theta = K.generator
    out = []
    for fac, _m in factor_rational(R):
        for lo, hi in isolate_squarefree(fac):
            gamma = RealAlg(fac, lo, hi)
            if fac.degree == 1:
                L = QQ
                g = QQ.coerce(gamma.rational_value())
            else:
                L = _new_field(gamma, K, max_depth, max_degree)
                g = L.gen()
            # image of theta in L: the common root of m(t) and S(g - k t, t)
            mt = UniPoly([L.coerce(c) for c in K.minpoly.coeffs], L)
            st = UniPoly([], L)
            lin = UniPoly([g, L.coerce(-k)], L)
            for i, c in enumerate(S.coeffs):
                st = st + UniPoly([L.coerce(a) for a in c.coeffs], L) * lin ** i
            h = mt.gcd(st)
            if h.degree != 1:
                continue
            th = -h.coeffs[0]
            if not _inside(th, theta):
                continue
            beta = g - th * k
            if L is QQ:
                # theta would be rational here, impossible for degree > 1
                continue  # pragma: no cover
            images = {K: th}
            for A, img in K.images.items():
                if A is K or img is None:
                    continue
                images[A] = _eval_elem(UniPoly(img.coeffs), th)
            L.images.update(images)
            L.depth = K.depth + 1
            out.append(beta)
    return out


def _inside(x: FieldElem, a: RealAlg) -> bool:
    """Whether the real value x lies in a's isolating interval (exact)."""
    w = (a.hi - a.lo) / 4
    while True:
        lo, hi = x.interval(w)
        if a.lo < lo and hi < a.hi:
            return True
        if hi <= a.lo or lo >= a.hi:
            return False
        w /= 16
        if w < Fraction(1, 2 ** 400):  # pragma: no cover
            raise ResourceLimit("refinement cap reached while locating a root")


def sort_real(xs):
    import functools

    return sorted(xs, key=functools.cmp_to_key(lambda a, b: a.compare(b)))


def compositum(K: NumberField, F: NumberField) -> NumberField:
    """A field containing both K and F (with their real embeddings)."""
    if K.contains(F):
        return K
    if F.contains(K):
        return F
    target = F.generator
    S = UniPoly([K.coerce(c) for c in F.minpoly.coeffs], K)
    for r in real_roots(S):
        L = r.field
        if _inside(r, target):
            L.images[F] = r
            for A, img in F.images.items():
                if A is F or img is None:
                    continue
                L.images[A] = _eval_elem(UniPoly(img.coeffs), r)
            return L
    raise AssertionError("generator not found among roots")  # pragma: no cover


def nth_root(c: FieldElem, n: int) -> FieldElem:
    """Positive real n-th root of a positive element."""
    if c.sign() <= 0:
        raise InputError("nth_root needs a positive argument")
    K = c.field
    S = UniPoly([-c] + [K.zero] * (n - 1) + [K.one], K)
    roots = [r for r in real_roots(S) if r.sign() > 0]
    return roots[0]
