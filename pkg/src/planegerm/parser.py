"""Expression parser for germs and branch literals.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' exponent)?
    atom   := NUMBER | NAME | '(' expr ')' | 'sqrt' '(' expr ')' | 'O' '(' expr ')'
    exponent := INT | '(' INT ('/' INT)? ')'

Germs use the variables x and y with natural exponents; any other name must
be bound to a rational.  Branch literals use y only, allow fractional
exponents y^(p/q), coefficients sqrt(r), and an optional trailing O(y^e)
marking the truncation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .arith import BiPoly, UniPoly, field_of, isolate_real_roots_q
from .errors import ParseError
from .puiseux import FracSeries

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_]\w*)|(\S))")


def tokenize(text):
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:  # pragma: no cover - the pattern matches any non-space
            raise ParseError("bad character", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("num", m.group(1), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch == "*" and text.startswith("**", start):
                out.append(("op", "^", start))
                pos = start + 2
                continue
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start, "number, name, operator or parenthesis")
            out.append(("op", ch, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


# AST nodes are plain tuples: ("num", Fraction) ("var", name) ("neg", a)
# ("add"|"sub"|"mul"|"div", a, b) ("pow", a, Fraction) ("sqrt", a) ("O", a)

class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None, expected=None):
        t = self.toks[self.i]
        if (kind and t[0] != kind) or (value is not None and t[1] != value):
            got = t[1] or "end of input"
            raise ParseError(f"unexpected {got!r}", t[2], expected or value or kind)
        self.i += 1
        return t

    def parse(self):
        node = self.expr()
        self.take("end", expected="operator or end of input")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            node = ("mul" if op == "*" else "div", node, self.unary(), self.toks[self.i - 1][2])
        return node

    def unary(self):
        t = self.peek()
        if t[:2] == ("op", "-"):
            self.take()
            return ("neg", self.unary())
        if t[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            return ("pow", base, self.exponent())
        return base

    def exponent(self):
        t = self.peek()
        if t[0] == "num":
            self.take()
            return _number(t)
        if t[:2] == ("op", "-"):
            raise ParseError("negative exponent", t[2], "natural number")
        self.take("op", "(", expected="exponent")
        if self.peek()[:2] == ("op", "-"):
            raise ParseError("negative exponent", self.peek()[2], "natural number")
        num = _number(self.take("num", expected="integer"))
        if self.peek()[:2] == ("op", "/"):
            self.take()
            den = _number(self.take("num", expected="integer"))
            if den == 0:
                raise ParseError("zero denominator", self.toks[self.i - 1][2])
            num = num / den
        self.take("op", ")", expected="')'")
        return num

    def atom(self):
        t = self.peek()
        if t[0] == "num":
            self.take()
            return ("num", _number(t))
        if t[0] == "name":
            self.take()
            if t[1] in ("sqrt", "O") and self.peek()[:2] == ("op", "("):
                self.take()
                inner = self.expr()
                self.take("op", ")", expected="')'")
                return (t[1], inner, t[2])
            return ("var", t[1], t[2])
        if t[:2] == ("op", "("):
            self.take()
            node = self.expr()
            self.take("op", ")", expected="')'")
            return node
        raise ParseError(f"unexpected {t[1] or 'end of input'!r}", t[2], "number, name or '('")


def _number(tok):
    return Fraction(tok[1])


def parse_ast(text):
    return _Parser(text).parse()


# -- germs -----------------------------------------------------------------------------

@dataclass(frozen=True)
class GermExpr:
    source: str
    poly: BiPoly
    bindings: dict = field(default_factory=dict)


def _bind_value(v):
    try:
        return Fraction(v)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise ParseError(f"parameter value {v!r} is not a rational") from e


def parse(text: str, bindings: Optional[dict] = None) -> GermExpr:
    """Parse a polynomial germ in x and y into an exact BiPoly."""
    b = {k: _bind_value(v) for k, v in (bindings or {}).items()}
    for k in b:
        if k in ("x", "y"):
            raise ParseError(f"cannot bind the variable {k}")
    poly = _eval_poly(parse_ast(text), b)
    return GermExpr(text, poly, b)


def parse_poly(text, bindings=None) -> BiPoly:
    return parse(text, bindings).poly


def _const(p: BiPoly):
    if all(k == (0, 0) for k in p.terms):
        return p.terms.get((0, 0), Fraction(0))
    return None


def _eval_poly(n, b):
    kind = n[0]
    if kind == "num":
        return BiPoly.const(n[1])
    if kind == "var":
        if n[1] == "x":
            return BiPoly.x()
        if n[1] == "y":
            return BiPoly.y()
        if n[1] in b:
            return BiPoly.const(b[n[1]])
        raise ParseError(f"unbound parameter {n[1]!r}", n[2])
    if kind in ("sqrt", "O"):
        raise ParseError(f"{kind}(...) is only allowed in branch literals", n[2])
    if kind == "neg":
        return -_eval_poly(n[1], b)
    if kind == "pow":
        e = n[2]
        if e.denominator != 1:
            raise ParseError("germ exponents must be natural numbers", None, "natural number")
        return _eval_poly(n[1], b) ** int(e)
    a, c = _eval_poly(n[1], b), _eval_poly(n[2], b)
    if kind == "add":
        return a + c
    if kind == "sub":
        return a - c
    if kind == "mul":
        return a * c
    d = _const(c)
    if d is None:
        raise ParseError("division only by a constant", n[3])
    if d == 0:
        raise ParseError("division by zero", n[3])
    return a * (1 / d)


# -- branches -------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _sqrt_field(r: Fraction):
    roots = [a for a, _ in isolate_real_roots_q(UniPoly([-r, 0, 1])) if a.sign() > 0]
    return field_of(roots[0])


def _sqrt(r: Fraction):
    if r < 0:
        raise ParseError("sqrt of a negative number")
    n, d = r.numerator, r.denominator
    from math import isqrt

    if isqrt(n) ** 2 == n and isqrt(d) ** 2 == d:
        return Fraction(isqrt(n), isqrt(d))
    # sqrt(n/d) = sqrt(n*d)/d, keep one field per squarefree radicand
    m = n * d
    s = 1
    k = 2
    while k * k <= m:
        while m % (k * k) == 0:
            m //= k * k
            s *= k
        k += 1
    return _sqrt_field(Fraction(m)).gen() * Fraction(s, d)


class _Series:
    """Finite series in y with rational exponents and an optional O(y^e)."""

    def __init__(self, terms=None, trunc=None):
        self.terms = {e: c for e, c in (terms or {}).items() if c}
        self.trunc = trunc

    def const(self):
        if all(e == 0 for e in self.terms) and self.trunc is None:
            return self.terms.get(Fraction(0), Fraction(0))
        return None

    def __add__(self, o):
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t[e] + c if e in t else c
        tr = [v for v in (self.trunc, o.trunc) if v is not None]
        return _Series(t, min(tr) if tr else None)

    def __neg__(self):
        return _Series({e: -c for e, c in self.terms.items()}, self.trunc)

    def __mul__(self, o):
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = e1 + e2
                t[e] = t[e] + c1 * c2 if e in t else c1 * c2
        tr = None
        for a, b in ((self, o), (o, self)):
            if a.trunc is not None and b.terms:
                v = a.trunc + min(b.terms)
                tr = v if tr is None else min(tr, v)
        return _Series(t, tr)


def _eval_series(n):
    kind = n[0]
    if kind == "num":
        return _Series({Fraction(0): n[1]})
    if kind == "var":
        if n[1] != "y":
            raise ParseError(f"branch literals use y only, got {n[1]!r}", n[2])
        return _Series({Fraction(1): Fraction(1)})
    if kind == "sqrt":
        r = _eval_series(n[1]).const()
        if r is None or not isinstance(r, Fraction):
            raise ParseError("sqrt needs a rational argument", n[2])
        return _Series({Fraction(0): _sqrt(r)})
    if kind == "O":
        inner = _eval_series(n[1])
        if len(inner.terms) != 1:
            raise ParseError("O(...) needs a single power of y", n[2])
        (e,) = inner.terms
        return _Series({}, e)
    if kind == "neg":
        return -_eval_series(n[1])
    if kind == "pow":
        base = _eval_series(n[1])
        e = n[2]
        if len(base.terms) == 1 and base.trunc is None:
            ((b, c),) = base.terms.items()
            if e.denominator == 1:
                return _Series({b * e: c ** int(e)})
            if c == 1:
                return _Series({b * e: Fraction(1)})
        if e.denominator != 1:
            raise ParseError("fractional powers apply to y only")
        out = _Series({Fraction(0): Fraction(1)})
        for _ in range(int(e)):
            out = out * base
        return out
    a, c = _eval_series(n[1]), _eval_series(n[2])
    if kind == "add":
        return a + c
    if kind == "sub":
        return a + (-c)
    if kind == "mul":
        return a * c
    d = c.const()
    if d is None or not d:
        raise ParseError("division only by a nonzero constant", n[3])
    return a * _Series({Fraction(0): 1 / d})


def parse_branch(text: str) -> FracSeries:
    """Parse x = lambda(y), e.g. "y^(3/2) + sqrt(2)*y^2 + O(y^3)"."""
    s = _eval_series(parse_ast(text))
    return FracSeries.from_dict(s.terms, s.trunc)
