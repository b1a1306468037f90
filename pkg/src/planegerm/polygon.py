"""Newton polygons relative to a demi-branch, order functions and edge polynomials."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arith import QQ, BiPoly, UniPoly
from .errors import InputError, InsufficientTruncation, NotMiniRegular
from .puiseux import DemiBranch, FracBiPoly, as_series, substitute


def is_mini_regular(f: BiPoly) -> bool:
    m = f.mult()
    return bool(f.terms.get((m, 0)))


def require_mini_regular(f: BiPoly):
    if f.is_zero():
        raise InputError("zero polynomial")
    if not is_mini_regular(f):
        raise NotMiniRegular()


@dataclass(frozen=True)
class RelPolygon:
    """Vertices (i, j) in increasing i; edges carry their slope -xi."""

    vertices: tuple
    valid_below: Optional[Fraction] = None

    @property
    def edges(self):
        out = []
        for (i1, j1), (i2, j2) in zip(self.vertices, self.vertices[1:]):
            out.append(((i1, j1), (i2, j2), Fraction(j2 - j1) / (i2 - i1)))
        return out

    def edge_xis(self):
        return [-s for _, _, s in self.edges]


@dataclass(frozen=True)
class OrderFn:
    """Concave piecewise-linear ord(xi) on [1, oo).

    ``breakpoints`` holds (xi, ord(xi)) at xi = 1 and at each change of slope;
    ``slopes[k]`` is the (integer) slope after breakpoint k.
    """

    breakpoints: tuple
    slopes: tuple
    certified_below: Optional[Fraction] = None  # xi bound when computed from a truncation

    def __call__(self, xi):
        xi = Fraction(xi)
        if xi < 1:
            raise InputError("order functions are defined for xi >= 1")
        if self.certified_below is not None and xi >= self.certified_below:
            raise InsufficientTruncation(f"order at xi={xi} is beyond the certified range")
        k = 0
        while k + 1 < len(self.breakpoints) and self.breakpoints[k + 1][0] <= xi:
            k += 1
        x0, v0 = self.breakpoints[k]
        return v0 + self.slopes[k] * (xi - x0)

    def pieces(self):
        """(start, end or None, slope, intercept) with ord = intercept + slope*xi."""
        out = []
        for k, ((x0, v0), s) in enumerate(zip(self.breakpoints, self.slopes)):
            end = self.breakpoints[k + 1][0] if k + 1 < len(self.breakpoints) else None
            out.append((x0, end, s, v0 - s * x0))
        return out


@dataclass(frozen=True)
class EdgePoly:
    xi: Fraction
    ord: Fraction
    poly: UniPoly  # coefficients in a number field

    def __repr__(self):
        return f"EdgePoly(xi={self.xi}, ord={self.ord}, P={self.poly.to_str()})"


# -- core ---------------------------------------------------------------------

def _expansion(f: BiPoly, gamma, regular=True) -> FracBiPoly:
    if regular:
        require_mini_regular(f)
    elif f.is_zero():
        raise InputError("zero polynomial")
    lam = as_series(gamma)
    if lam.terms and lam.terms[0][0] < 1:
        raise InputError("branch is not allowable (lowest exponent below 1)")
    return substitute(f, lam)


def _tail(gamma):
    return gamma.generic_tail if isinstance(gamma, DemiBranch) else None


def _lower_hull(points):
    """Lower-left convex hull from the leftmost-lowest point to the lowest-leftmost."""
    pts = sorted(set(points))
    # keep only the lowest j for each i
    best = {}
    for i, j in pts:
        if i not in best or j < best[i]:
            best[i] = j
    pts = sorted(best.items())
    jmin = min(j for _, j in pts)
    ibot = min(i for i, j in pts if j == jmin)
    pts = [p for p in pts if p[0] <= ibot]
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point unless it is strictly below the chord
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    # strictly decreasing j from left to right
    out = []
    for p in hull:
        if out and p[1] >= out[-1][1]:
            continue
        out.append(p)
    return out


def _envelope(points):
    """Lower envelope of the lines j + i*xi over xi in [1, oo)."""
    pts = list(set(points))
    x = Fraction(1)
    vals = [(j + i * x, i, j) for i, j in pts]
    v = min(t[0] for t in vals)
    i, j = min((t[1], t[2]) for t in vals if t[0] == v)
    bps, slopes = [(x, v)], [i]
    while True:
        nxt = None
        for i2, j2 in pts:
            if i2 < i:
                cross = Fraction(j2 - j) / (i - i2)
                if cross > x and (nxt is None or cross < nxt[0] or (cross == nxt[0] and i2 < nxt[1])):
                    nxt = (cross, i2, j2)
        if nxt is None:
            break
        x, i, j = nxt
        bps.append((x, j + i * x))
        slopes.append(i)
    return tuple(bps), tuple(slopes)


def _support(f, gamma, regular=True):
    exp = _expansion(f, gamma, regular)
    pts = [(i, j) for (i, j) in exp.terms]
    return exp, pts


def _unknown_floor(bounds, xi):
    """Lower bound for j + i*xi over the unknown part of a truncated expansion."""
    return min(v + k * xi for k, v in bounds) if bounds else None


def _certified_xi(points, bounds):
    """Smallest xi >= 1 where ord is no longer certified (None: certified on [1, oo))."""
    if not bounds:
        return None
    cands = {Fraction(1)}
    lines = list(set(points))
    bps, _ = _envelope(lines)
    cands.update(x for x, _ in bps)
    cands.update(x for x, _ in _envelope(list(bounds))[0])
    for i, j in lines:
        for k, v in bounds:
            if i != k:
                x = Fraction(v - j) / (i - k)
                if x > 1:
                    cands.add(x)
    for x in sorted(cands):
        if min(j + i * x for i, j in lines) >= _unknown_floor(bounds, x):
            return x
    return None


def relative_polygon(f: BiPoly, gamma, allow_partial=False) -> RelPolygon:
    exp, pts = _support(f, gamma)
    tail = _tail(gamma)
    if tail is not None:
        pts = _generic_points(pts, tail)
    verts = _lower_hull(pts)
    bad = _certified_xi(pts, exp.bounds) if tail is None else None
    if bad is not None and not allow_partial:
        raise InsufficientTruncation(
            f"branch truncated at {exp.valid_below} determines the polygon only for slopes below {bad}",
            required=bad,
        )
    return RelPolygon(tuple(verts), exp.valid_below)


def _generic_points(pts, tail):
    o = min(j + i * tail for i, j in pts)
    return [(i, j) for i, j in pts if i > 0] + [(0, o)]


def order_function(f: BiPoly, gamma) -> OrderFn:
    # ord is meaningful on [1, oo) without mini-regularity; only the
    # polygon duality needs it
    exp, pts = _support(f, gamma, regular=False)
    tail = _tail(gamma)
    if tail is not None:
        pts = _generic_points(pts, tail)
    bps, slopes = _envelope(pts)
    cert = _certified_xi(pts, exp.bounds) if tail is None else None
    return OrderFn(bps, slopes, cert)


def edge_polynomial(f: BiPoly, gamma, xi) -> EdgePoly:
    xi = Fraction(xi)
    if xi < 1:
        raise InputError("edge polynomials are defined for xi >= 1")
    tail = _tail(gamma)
    if tail is not None and xi >= tail:
        raise InputError("edge polynomial at or beyond the generic term depends on its coefficient")
    exp, pts = _support(f, gamma, regular=False)
    o = min(j + i * xi for i, j in pts)
    floor = _unknown_floor(exp.bounds, xi)
    if floor is not None and o >= floor:
        raise InsufficientTruncation(
            f"branch truncated at {exp.valid_below} cannot certify the edge polynomial at xi={xi}",
            required=xi,
        )
    K = QQ
    cs = {}
    for (i, j), c in exp.terms.items():
        if j + i * xi == o:
            cs[i] = c
            if not K.contains(c.field):
                K = c.field
    deg = max(cs)
    poly = UniPoly([cs.get(i, K.zero) for i in range(deg + 1)], K)
    return EdgePoly(xi, o, poly)


def initial_newton_polynomial(f: BiPoly, gamma) -> FracBiPoly:
    exp, pts = _support(f, gamma)
    tail = _tail(gamma)
    if tail is not None:
        raise InputError("initial Newton polynomial needs a branch without a generic term")
    relative_polygon(f, gamma)  # validity check
    verts = _lower_hull(pts)
    edges = list(zip(verts, verts[1:]))
    keep = {}
    for (i, j), c in exp.terms.items():
        on = (i, j) in verts
        for (i1, j1), (i2, j2) in edges:
            if i1 <= i <= i2 and (j - j1) * (i2 - i1) == (j2 - j1) * (i - i1):
                on = True
        if on:
            keep[(i, j)] = c
    return FracBiPoly(keep, exp.valid_below)


def legendre_roundtrip_check(polygon: RelPolygon, ordfn: OrderFn) -> bool:
    """Whether the order function and the polygon are Legendre dual."""
    verts = set((int(i), Fraction(j)) for i, j in polygon.vertices)
    from_ord = {(s, b) for _, _, s, b in ordfn.pieces()}
    m = ordfn.breakpoints[0][1]
    from_ord.add((m, Fraction(0)))
    from_ord = {(int(i), Fraction(j)) for i, j in from_ord}
    if verts != from_ord:
        return False
    # each edge of slope -xi with xi > 1 is a breakpoint of ord and vice versa
    edge_x = {x for x in polygon.edge_xis() if x > 1}
    bp_x = {x for x, _ in ordfn.breakpoints[1:]}
    if edge_x != bp_x:
        return False
    for x, v in ordfn.breakpoints:
        if min(j + i * x for i, j in verts) != v:
            return False
    return True


@dataclass(frozen=True)
class BoundaryPiece:
    """phi(x) = intercept + slope*x on [lo, hi]; intercept None means phi = oo."""

    lo: Fraction
    hi: Fraction
    intercept: Optional[Fraction]
    slope: Fraction

    def __call__(self, x):
        return None if self.intercept is None else self.intercept + self.slope * x


def boundary_function(polygon: RelPolygon):
    """The Newton boundary as a function phi of x on (0, m], m the last vertex's i."""
    verts = [(Fraction(i), Fraction(j)) for i, j in polygon.vertices]
    out = []
    if verts[0][0] > 0:
        out.append(BoundaryPiece(Fraction(0), verts[0][0], None, Fraction(0)))
    for (i1, j1), (i2, j2) in zip(verts, verts[1:]):
        s = (j2 - j1) / (i2 - i1)
        out.append(BoundaryPiece(i1, i2, j1 - s * i1, s))
    return tuple(out)
