"""Newton-Puiseux root tracking and real tree models of plane germs."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional

from .arith import (
    QQ,
    BiPoly,
    FieldElem,
    UniPoly,
    real_roots,
    real_roots_with_mult,
    squarefree_factor_bipoly,
)
from .errors import InputError, NotMiniRegular, ResourceLimit
from .polygon import edge_polynomial, is_mini_regular
from .puiseux import DemiBranch, FracSeries, substitute

MAX_BUNCH_DEPTH = 200


# -- data ---------------------------------------------------------------------

@dataclass(frozen=True)
class Trunk:
    multiplicity: int
    position: Optional[str]  # "L", "0", "R" on a zero-marked bar, else None
    child: "Bar"
    coeff: object = field(default=None, compare=False)  # coefficient at y^h(B)


@dataclass(frozen=True)
class Bar:
    """A bar of height h (None for +oo) on top of a trunk of multiplicity m.

    Besides the combinatorial data, a bar keeps what the invariants need:
    ``truncation`` is the common part of its bunch (terms below h), ``base``
    the height of the bar below, and on (base, h) the order of f along the
    horn is ``J + m*xi`` with leading coefficient ``lead``.
    """

    height: Optional[Fraction]
    zero_marked: bool
    trunks: tuple
    multiplicity: int
    truncation: FracSeries = field(compare=False)
    base: Fraction = field(compare=False)
    J: Fraction = field(compare=False)
    lead: object = field(compare=False)
    edge_poly: object = field(default=None, compare=False)  # P at h(B), finite bars only
    dying: int = field(default=0, compare=False)  # roots ending here (non-real coefficient)
    root_next: object = field(default=None, compare=False)  # leaf: next exponent of the root

    @property
    def infinite(self):
        return self.height is None

    def walk(self):
        yield self
        for t in self.trunks:
            yield from t.child.walk()


@dataclass(frozen=True)
class DirectionTree:
    """Subtree grown on the ground bar for the direction x = a*y on one half."""

    half: int  # +1: y > 0 of the working coordinates, -1: y < 0
    direction: object  # a, FieldElem
    multiplicity: int
    bar: Bar


@dataclass(frozen=True)
class RealTree:
    source: BiPoly
    shear: int  # the tree is computed for source(x, y + shear*x)
    directions: tuple
    signs: tuple  # sign of f in the sector after each direction (clockwise)
    global_sign: Optional[int] = None  # when no direction carries roots

    def bars(self):
        for d in self.directions:
            yield from d.bar.walk()

    def to_json(self):
        return {
            "ground": [
                {"subtree": _dir_json(d), "sector_sign": _sign_str(s)}
                for d, s in zip(self.directions, self.signs)
            ],
            "sign": None if self.global_sign is None else _sign_str(self.global_sign),
        }

    def render(self):
        return render_tree(self)


@dataclass(frozen=True)
class PuiseuxRoot:
    branch: DemiBranch
    multiplicity: int
    real: bool
    determined: bool  # for real roots: no further characteristic pair can appear


@dataclass(frozen=True)
class CharSequence:
    pairs: tuple
    coeff_signs: tuple
    complete: bool = True

    @property
    def exponents(self):
        out, d = [], 1
        for n, di in self.pairs:
            d *= di
            out.append(Fraction(n, d))
        return out


@dataclass(frozen=True)
class Horn:
    truncation: FracSeries
    xi: Fraction


@dataclass(frozen=True)
class RootHornResult:
    is_root_horn: bool
    height: Optional[Fraction]
    multiplicity: Optional[int]

    def __bool__(self):
        return self.is_root_horn


# -- small helpers ---------------------------------------------------------------

def _sgn(v):
    return (v > 0) - (v < 0)


def _sign_str(s):
    return "+" if s > 0 else "-"


def _hstr(h):
    return "inf" if h is None else str(h)


def _series_N(lam: FracSeries):
    return lam.N


def initial_poly_z(f: BiPoly) -> UniPoly:
    """f_m(z, 1)."""
    m = f.mult()
    cs = {}
    for (i, j), c in f.terms.items():
        if i + j == m:
            cs[i] = c
    return UniPoly([cs.get(i, 0) for i in range(m + 1)])


def mini_regularize(f: BiPoly):
    """Smallest c >= 0 with f(x, y + c*x) mini-regular in x, and that polynomial.

    A shear of x alone, f(x + c*y, y), leaves f_m(1, 0) unchanged, so the
    shear acts on y: the new initial form at (1, 0) is f_m(1, c).
    """
    if f.is_zero():
        raise InputError("zero polynomial")
    fm = f.initial_form()
    c = 0
    while not fm(1, c):
        c += 1
    if c == 0:
        return 0, f
    return c, f.compose(BiPoly.x(), BiPoly.y() + BiPoly.x() * c)


# -- bunch recursion ---------------------------------------------------------------

class _Grower:
    def __init__(self, parts, max_depth=MAX_BUNCH_DEPTH):
        self.parts = parts  # [(squarefree factor, multiplicity)]
        self.max_depth = max_depth
        self.dead = []  # (DemiBranch, count) for truncated roots

    def _node(self, lam, e):
        """Face data of every part at slope e along lam."""
        data = []
        for fk, k in self.parts:
            F = substitute(fk, lam)
            pts = F.terms
            o = min(j + i * e for i, j in pts)
            n = min(i for i, j in pts if j + i * e == o)
            J = o - n * e
            data.append((fk, k, F, n, J, pts[(n, J)]))
        return data

    def grow(self, lam: FracSeries, e: Fraction, depth=0):
        if depth > self.max_depth:
            raise ResourceLimit("bunch recursion depth limit exceeded")
        data = self._node(lam, e)
        m = sum(k * n for _, k, _, n, _, _ in data)
        m_red = sum(n for *_, n, _, _ in data)
        J = sum(k * Jk for _, k, _, _, Jk, _ in data)
        lead = QQ.one
        for _, k, _, _, _, c in data:
            lead = lead * c ** k
        if m_red == 1:
            nxt = None
            for fk, k, F, n, Jk, _ in data:
                if n == 1:
                    nxt = _next_slope(F, n, Jk)
            return Bar(None, False, (), m, lam, e, J, lead, root_next=nxt)
        xi = min(_next_slope(F, n, Jk) or _INF for _, _, F, n, Jk, _ in data if n > 0)
        if xi is _INF:  # pragma: no cover - coprime factors cannot share a root
            raise AssertionError("bunch without a splitting edge")
        polys = []
        for fk, k, F, n, Jk, _ in data:
            o = Jk + n * xi
            cs = {i: c for (i, j), c in F.terms.items() if j + i * xi == o}
            polys.append((_upoly(cs), k))
        P = UniPoly([1], QQ)
        red = UniPoly([1], QQ)
        for p, k in polys:
            P = _pmul(P, _ppow(p, k))
            red = _pmul(red, p)
        red = red.squarefree_part()
        if red.degree == 1:
            b = -red.coeffs[0] / red.coeffs[1]
            return self.grow(lam.append(b, xi), xi, depth + 1)
        zero_marked = (xi * _series_N(lam)).denominator != 1
        trunks = []
        total = 0
        for b in real_roots(red):
            mult = sum(k * _mult(p, b) for p, k in polys)
            total += mult
            child_lam = lam if not b else lam.append(b, xi)
            child = self.grow(child_lam, xi, depth + 1)
            pos = None
            if zero_marked:
                pos = {1: "R", 0: "0", -1: "L"}[b.sign()]
            trunks.append(Trunk(mult, pos, child, b))
        if total < m:
            self.dead.append((DemiBranch(lam, xi), m - total))
        return Bar(xi, zero_marked, tuple(trunks), m, lam, e, J, lead, P, m - total)


class _Inf:
    def __lt__(self, o):
        return False

    def __gt__(self, o):
        return True


_INF = _Inf()


def _next_slope(F, n, J):
    """Smallest slope of an edge left of the vertex (n, J); None if there is none."""
    best = None
    for (i, j) in F.terms:
        if i < n:
            s = Fraction(j - J) / (n - i)
            if best is None or s < best:
                best = s
    return best


def _upoly(cs):
    K = QQ
    for c in cs.values():
        if not K.contains(c.field):
            K = c.field
    deg = max(cs)
    return UniPoly([K.coerce(cs.get(i, 0)) for i in range(deg + 1)], K)


def _lift(p: UniPoly, K):
    if p.field is K:
        return p
    return UniPoly([K.coerce(c) for c in p.coeffs], K)


def _pmul(a: UniPoly, b: UniPoly):
    K = a.field if a.field.contains(b.field) else b.field
    return _lift(a, K) * _lift(b, K)


def _ppow(a, k):
    return a ** k


def _mult(p: UniPoly, b: FieldElem) -> int:
    K = p.field if p.field.contains(b.field) else b.field
    q = _lift(p, K)
    lin = UniPoly([-K.coerce(b), K.one], K)
    k = 0
    while q.degree >= 1 and not q(K.coerce(b)):
        q = q // lin
        k += 1
    return k


# -- ground bar ------------------------------------------------------------------

def _half_trees(g: BiPoly, half: int, parts, max_depth):
    """Direction subtrees of g (already mini-regular) for y > 0."""
    fz = initial_poly_z(g)
    out = []
    for a, mv in real_roots_with_mult(fz):
        lam = FracSeries(((Fraction(1), a),)) if a else FracSeries()
        grower = _Grower(parts, max_depth)
        bar = grower.grow(lam, Fraction(1))
        if bar.multiplicity != mv:  # pragma: no cover - sanity
            raise AssertionError("direction multiplicity mismatch")
        out.append(DirectionTree(half, a, mv, bar))
    return out


def _rotate(parts):
    return [(fk.reflect(-1, -1), k) for fk, k in parts]


def _mid_sign(fm: BiPoly, a: FieldElem, b: FieldElem):
    """Sign of f_m at a rational direction (q, 1) with a < q < b."""
    lo = a.interval(Fraction(1, 2 ** 30))[1]
    hi = b.interval(Fraction(1, 2 ** 30))[0]
    w = Fraction(1, 2 ** 30)
    while not lo < hi:
        w /= 2 ** 10
        lo = a.interval(w)[1]
        hi = b.interval(w)[0]
    q = _simple_between(lo, hi)
    return _sgn(fm(q, 1))


def _simple_between(lo, hi):
    """A rational with small denominator strictly between lo and hi."""
    d = 1
    while True:
        n = math.floor(lo * d) + 1
        if Fraction(n, d) < hi:
            return Fraction(n, d)
        d *= 2


def build_real_tree(f: BiPoly, max_depth=MAX_BUNCH_DEPTH) -> RealTree:
    if f.is_zero():
        raise InputError("zero polynomial")
    c, g = mini_regularize(f)
    parts = squarefree_factor_bipoly(g)
    up = _half_trees(g, 1, parts, max_depth)
    low = _half_trees(g.reflect(-1, -1), -1, _rotate(parts), max_depth)
    dirs = up + low
    fm = g.initial_form()
    fm_low = g.reflect(-1, -1).initial_form()
    if not dirs:
        s = _sgn(fm(1, 0)) if fm.mult() > 0 else _sgn(fm(0, 0))
        return RealTree(f, c, (), (), s)
    signs = []
    for k, d in enumerate(dirs):
        nxt = dirs[(k + 1) % len(dirs)]
        if d.half == nxt.half and k + 1 < len(dirs):
            s = _mid_sign(fm if d.half > 0 else fm_low, d.direction, nxt.direction)
        elif d.half > 0:
            s = _sgn(fm(1, 0))  # passing the positive x-axis
        else:
            s = _sgn(fm(-1, 0))  # passing the negative x-axis
        signs.append(s)
    return RealTree(f, c, tuple(dirs), tuple(signs))


# -- serialization -------------------------------------------------------------------

def _bar_json(b: Bar):
    d = {"h": _hstr(b.height), "zero": b.zero_marked, "trunks": []}
    for t in b.trunks:
        tj = {"m": t.multiplicity}
        if t.position is not None:
            tj["pos"] = t.position
        tj["bar"] = _bar_json(t.child)
        d["trunks"].append(tj)
    return d


def _dir_json(d: DirectionTree):
    return {"m": d.multiplicity, "bar": _bar_json(d.bar)}


def _dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _rotation_code(T: RealTree) -> str:
    if not T.directions:
        return _dumps({"ground": [], "sign": _sign_str(T.global_sign)})
    items = [_dumps([_dir_json(d), _sign_str(s)]) for d, s in zip(T.directions, T.signs)]
    best = None
    for r in range(len(items)):
        cand = "[" + ",".join(items[r:] + items[:r]) + "]"
        if best is None or cand < best:
            best = cand
    return '{"ground":' + best + "}"


def canonical_code(T: RealTree, mode: str = "orientation-preserving") -> bytes:
    """Encoding equal for isomorphic trees (cyclic rotations; reflections in free mode)."""
    code = _rotation_code(T)
    if mode == "free":
        R = build_real_tree(T.source.reflect(-1, 1))
        code = min(code, _rotation_code(R))
    elif mode != "orientation-preserving":
        raise InputError(f"unknown mode {mode!r}")
    return code.encode("utf-8")


def blow_analytic_equivalent(f: BiPoly, g: BiPoly, mode: str = "orientation-preserving") -> bool:
    cf = canonical_code(build_real_tree(f), "orientation-preserving")
    cands = [g]
    if mode == "free":
        cands += [g.reflect(-1, 1), g.reflect(1, -1), g.reflect(-1, -1)]
    elif mode != "orientation-preserving":
        raise InputError(f"unknown mode {mode!r}")
    return any(canonical_code(build_real_tree(h), "orientation-preserving") == cf for h in cands)


# -- rendering -------------------------------------------------------------------------

def render_tree(T: RealTree) -> str:
    lines = [f"ground bar (h=1), computed after y -> y + {T.shear}*x" if T.shear else "ground bar (h=1)"]
    if not T.directions:
        lines.append(f"  no root directions; sign {_sign_str(T.global_sign)}")
        return "\n".join(lines)
    for d, s in zip(T.directions, T.signs):
        side = "y>0" if d.half > 0 else "y<0"
        lines.append(f"  direction x = {d.direction}*y ({side}), trunk m={d.multiplicity}")
        _render_bar(d.bar, "    ", lines)
        lines.append(f"  sector sign {_sign_str(s)}")
    return "\n".join(lines)


def _render_bar(b: Bar, ind, lines):
    mark = " [0]" if b.zero_marked else ""
    lines.append(f"{ind}==== h={_hstr(b.height)}{mark} (m={b.multiplicity})")
    for t in b.trunks:
        pos = f" {t.position}" if t.position else ""
        lines.append(f"{ind}  | m={t.multiplicity}{pos}")
        _render_bar(t.child, ind + "    ", lines)


# -- roots and characteristic data ---------------------------------------------------------

def puiseux_roots(f: BiPoly, half: int = 1, max_depth=MAX_BUNCH_DEPTH):
    """Newton-Puiseux roots x = lambda(y), y >= 0, of f (half=+1) or of f(x, -y) (half=-1).

    Real roots are returned up to the point where they are separated from all
    other roots (flagged determined); non-real roots as their real truncation
    with a generic term at the first non-real exponent.
    """
    if f.is_zero():
        raise InputError("zero polynomial")
    if not is_mini_regular(f):
        raise NotMiniRegular()
    g = f if half > 0 else f.reflect(1, -1)
    parts = squarefree_factor_bipoly(g)
    fz = initial_poly_z(g)
    out = []
    real_dirs = real_roots_with_mult(fz)
    n_real = sum(k for _, k in real_dirs)
    if fz.degree - n_real > 0:
        out.append(PuiseuxRoot(DemiBranch(FracSeries(), Fraction(1)), fz.degree - n_real, False, False))
    for a, _mv in real_dirs:
        lam = FracSeries(((Fraction(1), a),)) if a else FracSeries()
        grower = _Grower(parts, max_depth)
        bar = grower.grow(lam, Fraction(1))
        for leaf in bar.walk():
            if leaf.infinite:
                nxt = leaf.root_next
                ser = FracSeries(leaf.truncation.terms, nxt)
                out.append(PuiseuxRoot(DemiBranch(ser), leaf.multiplicity, True, True))
        for br, cnt in grower.dead:
            out.append(PuiseuxRoot(br, cnt, False, False))
    return out


def extend_root(f: BiPoly, root: PuiseuxRoot, T) -> PuiseuxRoot:
    """More terms of a separated real root, through exponent T."""
    if not root.real:
        raise InputError("only real roots can be extended")
    T = Fraction(T)
    lam = root.branch.series
    nxt = lam.truncation
    if nxt is None:
        return root
    terms = FracSeries(lam.terms)
    part = None
    for fk, _k in squarefree_factor_bipoly(f):
        F = substitute(fk, terms)
        o = min(j + i * nxt for i, j in F.terms)
        if max(i for i, j in F.terms if j + i * nxt == o) == 1:
            part = fk
            break
    if part is None:
        raise InputError("root does not belong to f")
    while nxt is not None and nxt <= T:
        F = substitute(part, terms)
        J = min(j for (i, j) in F.terms if i == 1)
        b = -F.terms[(0, J + nxt)] / F.terms[(1, J)]
        terms = terms.append(b, nxt)
        F = substitute(part, terms)
        nxt = _next_slope(F, 1, min(j for (i, j) in F.terms if i == 1))
    return PuiseuxRoot(DemiBranch(FracSeries(terms.terms, nxt)), root.multiplicity, True, True)


def characteristic_data(gamma) -> CharSequence:
    complete = None
    if isinstance(gamma, PuiseuxRoot):
        complete = gamma.determined
        gamma = gamma.branch
    ser = gamma.series if isinstance(gamma, DemiBranch) else gamma
    if complete is None:
        complete = ser.truncation is None
    pairs, signs = [], []
    D = 1
    for e, c in ser.terms:
        if (e * D).denominator != 1:
            r = e * D
            d = r.denominator
            pairs.append((r.numerator, d))
            signs.append(c.sign())
            D *= d
    return CharSequence(tuple(pairs), tuple("+" if s > 0 else "-" for s in signs), complete)


def lemma_puiseux_check(P0: UniPoly, d: int):
    """(k, Ptilde) with P0(z) = z^k * Ptilde(z^d), or None."""
    if P0.is_zero():
        raise InputError("zero polynomial")
    k = P0.low_degree()
    supp = P0.support()
    if any((i - k) % d for i in supp):
        return None
    zero = P0.coeff(0) * 0
    top = (P0.degree - k) // d
    cs = [P0.coeff(k + d * t) if (k + d * t) in supp else zero for t in range(top + 1)]
    return k, UniPoly(cs, P0.field)


def root_horn_test(f: BiPoly, H: Horn) -> RootHornResult:
    if not is_mini_regular(f):
        raise NotMiniRegular()
    ep = edge_polynomial(f, DemiBranch(H.truncation), H.xi)
    if ep.poly.distinct_root_count() >= 2:
        return RootHornResult(True, Fraction(H.xi), ep.poly.degree)
    return RootHornResult(False, None, None)
