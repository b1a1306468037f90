"""Sparse bivariate polynomials in x, y with rational coefficients."""
from __future__ import annotations

from fractions import Fraction

import sympy

from ..errors import InputError
from .poly import UniPoly

_X, _Y = sympy.symbols("x y")


class BiPoly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        for (i, j), c in (terms or {}).items():
            c = Fraction(c)
            if c:
                if i < 0 or j < 0:
                    raise InputError("negative exponent in polynomial")
                t[(int(i), int(j))] = c
        self.terms = t

    @classmethod
    def x(cls):
        return cls({(1, 0): 1})

    @classmethod
    def y(cls):
        return cls({(0, 1): 1})

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    # -- arithmetic ------------------------------------------------------------
    def _wrap(self, o):
        return o if isinstance(o, BiPoly) else BiPoly.const(o)

    def __add__(self, o):
        o = self._wrap(o)
        t = dict(self.terms)
        for k, c in o.terms.items():
            t[k] = t.get(k, 0) + c
        return BiPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-self._wrap(o))

    def __rsub__(self, o):
        return self._wrap(o) - self

    def __mul__(self, o):
        o = self._wrap(o)
        t = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in o.terms.items():
                key = (i + k, j + l)
                t[key] = t.get(key, 0) + a * b
        return BiPoly(t)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise InputError("exponent must be a natural number")
        result, base = BiPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, o):
        if not isinstance(o, BiPoly):
            o = self._wrap(o)
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    # -- structure ------------------------------------------------------------
    def support(self):
        return sorted(self.terms)

    def mult(self):
        """Order at the origin (degree of the initial form)."""
        if not self.terms:
            raise InputError("zero polynomial")
        return min(i + j for i, j in self.terms)

    def initial_form(self):
        m = self.mult()
        return BiPoly({k: c for k, c in self.terms.items() if sum(k) == m})

    def total_degree(self):
        return max(i + j for i, j in self.terms)

    def __call__(self, x, y):
        acc = 0
        for (i, j), c in self.terms.items():
            acc = acc + c * x ** i * y ** j
        return acc

    def eval_float(self, x, y):
        return sum(float(c) * x ** i * y ** j for (i, j), c in self.terms.items())

    def compose(self, X: "BiPoly", Y: "BiPoly"):
        """f(X(x,y), Y(x,y))."""
        out = BiPoly()
        cache_x, cache_y = {0: BiPoly.const(1)}, {0: BiPoly.const(1)}
        for (i, j), c in self.terms.items():
            if i not in cache_x:
                cache_x[i] = X ** i
            if j not in cache_y:
                cache_y[j] = Y ** j
            out = out + cache_x[i] * cache_y[j] * c
        return out

    def linear_change(self, a, b, c, d):
        """f(a x + b y, c x + d y)."""
        X = BiPoly({(1, 0): a, (0, 1): b})
        Y = BiPoly({(1, 0): c, (0, 1): d})
        return self.compose(X, Y)

    def x_shear(self, p: UniPoly):
        """f(x + p(y), y)."""
        X = BiPoly.x() + BiPoly({(0, k): c for k, c in enumerate(p.coeffs)})
        return self.compose(X, BiPoly.y())

    def reflect(self, sx=1, sy=1):
        return BiPoly({(i, j): c * sx ** i * sy ** j for (i, j), c in self.terms.items()})

    def swap(self):
        return BiPoly({(j, i): c for (i, j), c in self.terms.items()})

    def diff_x(self):
        return BiPoly({(i - 1, j): c * i for (i, j), c in self.terms.items() if i})

    def diff_y(self):
        return BiPoly({(i, j - 1): c * j for (i, j), c in self.terms.items() if j})

    def as_poly_in_x(self):
        """Coefficients c_i(y) (UniPoly in y) with f = sum c_i(y) x^i."""
        deg = max((i for i, _ in self.terms), default=-1)
        rows = [dict() for _ in range(deg + 1)]
        for (i, j), c in self.terms.items():
            rows[i][j] = c
        out = []
        for r in rows:
            top = max(r, default=-1)
            out.append(UniPoly([r.get(j, 0) for j in range(top + 1)]))
        return out

    def restrict(self, x=None, y=None):
        """Univariate restriction f(z, y0) or f(x0, z)."""
        if y is not None:
            cs = {}
            for (i, j), c in self.terms.items():
                cs[i] = cs.get(i, 0) + c * Fraction(y) ** j
        else:
            cs = {}
            for (i, j), c in self.terms.items():
                cs[j] = cs.get(j, 0) + c * Fraction(x) ** i
        top = max(cs, default=-1)
        return UniPoly([cs.get(k, 0) for k in range(top + 1)])

    # -- sympy bridge ----------------------------------------------------------
    def to_sympy(self):
        return sympy.Poly(
            {(i, j): sympy.Rational(c.numerator, c.denominator) for (i, j), c in self.terms.items()}
            or {(0, 0): 0},
            _X, _Y, domain="QQ",
        )

    @classmethod
    def from_sympy(cls, sp):
        sp = sympy.Poly(sp, _X, _Y, domain="QQ")
        return cls({m: Fraction(int(c.p), int(c.q)) for m, c in sp.terms()})

    # -- display ----------------------------------------------------------------
    def to_str(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, key=lambda k: (-(k[0] + k[1]), -k[0])):
            c = self.terms[(i, j)]
            mono = "*".join(
                s for s in (
                    "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                    "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
                ) if s
            )
            num = abs(c)
            if not mono:
                body = str(num)
            elif num == 1:
                body = mono
            else:
                body = f"{num}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    __str__ = to_str

    def __repr__(self):
        return f"BiPoly({self.to_str()})"


def squarefree_factor_bipoly(f: BiPoly):
    """Squarefree decomposition: [(factor, k)] with f = unit * prod factor^k."""
    if f.is_zero():
        raise InputError("zero polynomial")
    _, facs = f.to_sympy().sqf_list()
    out = []
    for fac, k in facs:
        b = BiPoly.from_sympy(fac)
        if not b.terms or all(i == 0 and j == 0 for i, j in b.terms):
            continue
        out.append((_normalize(b), k))
    return out


def _normalize(b: BiPoly):
    """Primitive integer content, positive leading coefficient in lex order."""
    from math import gcd, lcm

    den = 1
    for c in b.terms.values():
        den = lcm(den, c.denominator)
    g = 0
    for c in b.terms.values():
        g = gcd(g, int(c * den))
    lead = b.terms[max(b.terms)]
    s = den / Fraction(g) * (1 if lead > 0 else -1)
    return BiPoly({k: c * s for k, c in b.terms.items()})


def bipoly_gcd(f: BiPoly, g: BiPoly) -> BiPoly:
    return _normalize(BiPoly.from_sympy(sympy.gcd(f.to_sympy(), g.to_sympy())))
