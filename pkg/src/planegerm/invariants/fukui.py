"""Fukui invariant sets A(f), A+(f), A-(f) from the real tree model."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional

from ..arith import BiPoly, UniPoly
from ..errors import InputError
from ..tree import build_real_tree, mini_regularize

SIGN_MODES = ("all", "nonneg", "nonpos")


@dataclass(frozen=True)
class FukuiSet:
    bound: int
    members: tuple
    tail_from: Optional[int]
    has_infinity: bool

    def to_json(self):
        return {
            "bound": self.bound,
            "members": list(self.members),
            "tail_from": self.tail_from,
            "infinity": self.has_infinity,
        }

    def __contains__(self, v):
        return v in self.members

    def describe(self):
        ms = list(self.members)
        if self.tail_from is not None:
            head = [v for v in ms if v < self.tail_from]
            parts = [str(v) for v in head] + [f"{self.tail_from}..{self.bound}"]
        else:
            parts = [str(v) for v in ms]
        s = "{" + ", ".join(parts) + "}"
        if self.has_infinity:
            s += " + infinity"
        return s


def _den_upto(exps, xi):
    d = 1
    for e in exps:
        if e < xi:
            d = lcm(d, e.denominator)
    return d


def _poly_signs(p: UniPoly):
    """Signs taken by a real polynomial off its zero set."""
    lead = p.lead.sign()
    signs = {lead, lead * (-1) ** p.degree}
    if len(signs) == 1:
        from ..arith import real_roots_with_mult

        if any(k % 2 for _, k in real_roots_with_mult(p)):
            signs.add(-lead)
    return signs


def _power_signs(lead_sign, m):
    return {lead_sign, -lead_sign} if m % 2 else {lead_sign}


def primitive_values(f: BiPoly, B: int):
    """Primitive arc orders <= B with the signs f takes along such arcs.

    Returns (values: dict value -> set of signs, progressions, has_infinity)
    where progressions are (start, step, signs) families of primitive values
    continuing past B.
    """
    if f.is_zero():
        raise InputError("zero polynomial")
    _, g = mini_regularize(f)
    T = build_real_tree(g)
    vals = {}

    def add(v, signs):
        if 1 <= v <= B:
            vals.setdefault(v, set()).update(signs)

    m = g.mult()
    fm = g.initial_form()
    # arcs transverse to every root direction, including y = 0
    if T.directions:
        gsigns = set(T.signs)
    else:
        gsigns = {T.global_sign}
    if m > 0:
        add(m, gsigns)
    progs = []
    has_inf = False
    for bar in T.bars():
        exps = bar.truncation.exponents()
        lo, hi = bar.base, bar.height
        mm, J = bar.multiplicity, bar.J
        lead_s = bar.lead.sign()
        inner = _power_signs(lead_s, mm)
        for q in range(1, B + 1):
            p = (lo * q).__floor__() + 1
            while True:
                xi = Fraction(p, q)
                if hi is not None and xi > hi:
                    break
                if xi.denominator != q:
                    p += 1
                    continue
                v = lcm(_den_upto(exps, xi), q) * (J + mm * xi)
                if v > B:
                    break
                if v.denominator == 1:
                    if hi is not None and xi == hi:
                        add(int(v), _poly_signs(bar.edge_poly))
                    else:
                        add(int(v), inner)
                p += 1
        if hi is None:
            has_inf = True
            N = _den_upto(exps, Fraction(10 ** 9))
            start_p = (N * lo).__floor__() + 1
            progs.append((int(N * J + mm * start_p), mm, inner))
        else:
            P = bar.edge_poly
            c0 = P.coeff(0)
            if c0:
                v = _den_upto(exps, hi) * (J + mm * hi)
                if v.denominator == 1:
                    add(int(v), {c0.sign()})
    return vals, progs, has_inf


def _close(prim, B):
    out = set()
    for v in prim:
        k = v
        while k <= B:
            out.add(k)
            k += v
    return out


def _certify_tail(members, progs, B):
    if not progs:
        return None
    L = 1
    for _, d in progs:
        L = lcm(L, d)
    start = max(s for s, _ in progs)
    # smallest n from which the progressions cover every integer
    lo = min(s for s, _ in progs)
    n_ap = None
    n = lo
    limit = start + L
    covered = lambda k: any(k >= s and (k - s) % d == 0 for s, d in progs)
    # scan for a window of L consecutive covered integers
    run = 0
    k = lo
    while k <= limit + L:
        if covered(k):
            run += 1
            if run == L:
                n_ap = k - L + 1
                break
        else:
            run = 0
        k += 1
    if n_ap is None or n_ap > B:
        return None
    n = n_ap
    while n - 1 >= 1 and (n - 1) in members:
        n -= 1
    return n


def fukui_set(f: BiPoly, B: int, sign_mode: str = "all") -> FukuiSet:
    if sign_mode not in SIGN_MODES:
        raise InputError(f"sign mode must be one of {SIGN_MODES}")
    if B < 1:
        raise InputError("bound must be positive")
    vals, progs, has_inf = primitive_values(f, B)
    want = {"all": {1, -1}, "nonneg": {1}, "nonpos": {-1}}[sign_mode]
    prim = [v for v, s in vals.items() if s & want]
    members = _close(prim, B)
    ps = [(s, d) for s, d, sg in progs if sg & want]
    tail = _certify_tail(members, ps, B)
    return FukuiSet(B, tuple(sorted(members)), tail, has_inf)


# -- arc oracle (independent of the tree) --------------------------------------------

def arc_order(f: BiPoly, xs, ys, cap=None):
    """ord_t f(x(t), y(t)) for integer polynomial arcs given by coefficient lists.

    xs[i], ys[i] are the coefficients of t^i.  Returns None when f vanishes
    identically along the arc up to the cap.
    """
    deg = max(i + j for i, j in f.terms) if f.terms else 0
    if cap is None:
        cap = deg * max(len(xs), len(ys)) + 1

    def mul(a, b):
        out = [0] * min(len(a) + len(b) - 1, cap + 1)
        for i, u in enumerate(a):
            if not u:
                continue
            for j, w in enumerate(b):
                if i + j > cap:
                    break
                out[i + j] += u * w
        return out

    xp, yp = [[1]], [[1]]
    mx = max(i for i, _ in f.terms)
    my = max(j for _, j in f.terms)
    for _ in range(mx):
        xp.append(mul(xp[-1], list(xs)))
    for _ in range(my):
        yp.append(mul(yp[-1], list(ys)))
    total = [Fraction(0)] * (cap + 1)
    for (i, j), c in f.terms.items():
        prod = mul(xp[i], yp[j])
        for k, v in enumerate(prod):
            total[k] += c * v
    for k, v in enumerate(total):
        if v:
            return k
    return None


def arc_oracle(f: BiPoly, B: int, degree=6, coeff_range=2, samples=4000, seed=0):
    """Orders <= B of f along random integer polynomial arcs (a subset of A(f))."""
    rng = random.Random(seed)
    out = set()
    r = coeff_range
    for _ in range(samples):
        # bias toward arcs with vanishing low coefficients, where the
        # interesting orders live
        zx = rng.randint(1, degree)
        zy = rng.randint(1, degree)
        xs = [0] + [0 if i < zx else rng.randint(-r, r) for i in range(1, degree + 1)]
        ys = [0] + [0 if i < zy else rng.randint(-r, r) for i in range(1, degree + 1)]
        if not any(xs) and not any(ys):
            continue
        o = arc_order(f, xs, ys, cap=B + 1)
        if o is not None and 1 <= o <= B:
            out.add(o)
    return out
