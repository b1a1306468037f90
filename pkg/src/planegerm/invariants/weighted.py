"""Weighted homogeneous germs: weights, monomial-like shapes, classification."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

import mpmath

from ..arith import BiPoly, UniPoly
from ..errors import InputError
from .c1 import scale_matches

VERDICTS = ("equivalent", "not-equivalent", "inconclusive")


@dataclass(frozen=True)
class WeightedData:
    p: int
    q: int
    d: int
    l: int
    assoc: UniPoly
    swapped: bool = False  # x and y exchanged to get p <= q

    @property
    def case(self):
        if self.p == self.q == 1:
            return "A"
        return "B" if self.p == 1 else "C"


def weighted_data(f: BiPoly) -> Optional[WeightedData]:
    """Weights (p, q) and degree d with support on q*i + p*j = d, or None."""
    if f.is_zero():
        raise InputError("zero polynomial")
    pts = f.support()
    swapped = False
    if len(pts) == 1:
        p = q = 1
    else:
        (i0, j0) = pts[0]
        di = dj = 0
        for i, j in pts[1:]:
            a, b = i - i0, j - j0
            if di == 0 and dj == 0:
                di, dj = a, b
            elif a * dj - b * di != 0:
                return None
        if di * dj >= 0:
            return None
        g = gcd(abs(di), abs(dj))
        p, q = abs(di) // g, abs(dj) // g
        if p > q:
            f = f.swap()
            p, q = q, p
            swapped = True
    i0, j0 = f.support()[0]
    d = q * i0 + p * j0
    l = min(j for _, j in f.terms)
    return WeightedData(p, q, d, l, f.restrict(y=1), swapped)


# -- monomial-like shapes ---------------------------------------------------------

@dataclass(frozen=True)
class MonomialLike:
    kind: str  # "Am", "Bm", "Cm" or "none"
    params: dict = field(default_factory=dict)

    def normal_form(self):
        """Analytic normal form A' x^k y^l: exponents sorted, sign kept when it matters."""
        if self.kind == "none":
            return None
        k, l, A = self.params["k"], self.params["l"], self.params["A"]
        k, l = sorted((k, l))
        sign = 1 if (k % 2 or l % 2) else (1 if A > 0 else -1)
        return (k, l, sign)


def _linear_factors(f: BiPoly):
    """Real rational-free description of a binary form's distinct linear factors.

    Returns (roots of f(z,1) as (RealAlg or None, mult) or None if a factor is
    not real, multiplicity at infinity).
    """
    from ..arith import isolate_real_roots

    P = f.restrict(y=1)
    d = f.total_degree()
    inf = d - P.degree
    roots = isolate_real_roots(P)
    if sum(k for _, k in roots) != P.degree:
        return None, inf
    return roots, inf


def monomial_like(f: BiPoly) -> MonomialLike:
    w = weighted_data(f)
    if w is None:
        raise InputError("not weighted homogeneous")
    g = f.swap() if w.swapped else f
    if len(g.terms) == 1:
        (k, l), A = next(iter(g.terms.items()))
        return MonomialLike("Cm", {"A": A, "k": k, "l": l})
    P = w.assoc
    if w.case == "A":
        roots, inf = _linear_factors(g)
        if roots is None:
            return MonomialLike("none")
        factors = [(r, k) for r, k in roots] + ([(None, inf)] if inf else [])
        if len(factors) > 2:
            return MonomialLike("none")
        (r1, k), (r2, l) = factors if len(factors) == 2 else (factors[0], (None, 0))
        return MonomialLike("Am", {"A": P.lead, "k": k, "l": l, "roots": (r1, r2)})
    if w.case == "B":
        # P(z) = A (z + b)^k with b != 0
        sq = P.squarefree_decomposition()
        nontriv = [(s, k) for s, k in sq if s.degree > 0]
        if len(nontriv) == 1 and nontriv[0][0].degree == 1:
            s, k = nontriv[0]
            b = s.coeffs[0] / s.coeffs[1]
            if b != 0:
                return MonomialLike("Bm", {"A": P.lead, "k": k, "l": w.l, "b": b, "q": w.q})
    return MonomialLike("none")


# -- classification ----------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    verdict: str
    reason: str
    certificate: Optional[dict] = None

    def __bool__(self):
        return self.verdict == "equivalent"


def _centered(P: UniPoly):
    n = P.degree
    c = -P.coeffs[n - 1] / (n * P.coeffs[n])
    return P.shift(c), c


def _match_scaled(Pf, Pg, need_sign=None):
    """(kappa, alpha) with Pf(z) = kappa*Pg(alpha z); optionally sign(alpha) fixed."""
    for kappa, alpha in scale_matches(Pf, Pg):
        if need_sign is None or alpha.sign() == need_sign:
            return kappa, alpha
    return None


def _weighted_c1(wf, wg, f, g, orientation_preserving):
    """Cases (B) and (C): f(x,y) = g(c1 x - b y^q, c2 y)."""
    ga = g.swap() if wg.swapped else g
    for flip in (1, -1):
        h = ga.reflect(1, flip)
        Ph = h.restrict(y=1)
        if wf.case == "B":
            Pf_c, cf = _centered(wf.assoc)
            Ph_c, ch = _centered(Ph)
        else:
            Pf_c, cf, Ph_c, ch = wf.assoc, Fraction(0), Ph, Fraction(0)
        if Pf_c.degree != Ph_c.degree:
            continue
        need = (1 if flip == 1 else -1) if orientation_preserving else None
        hit = _match_scaled(Pf_c, Ph_c, need)
        if hit is None:
            continue
        kappa, alpha = hit
        # f(x,y) = kappa * h(alpha (x - cf) + ch, 1) on y = 1; undo the weights
        t = float(kappa) ** (1.0 / wf.d)
        c2 = flip * t ** wf.p
        c1 = float(alpha) * t ** wf.q
        b = float(alpha * cf - ch) * t ** wf.q if wf.case == "B" else 0.0
        cert = {"c1": c1, "c2": c2, "b": b, "kappa": str(kappa), "alpha": str(alpha)}
        return cert
    return None


def _kt_param(f: BiPoly):
    """t when f is a positive multiple of x^4 + t x^2 y^2 + y^4."""
    keys = set(f.terms)
    if not keys <= {(4, 0), (2, 2), (0, 4)} or f.terms.get((4, 0)) != f.terms.get((0, 4)):
        return None
    a = f.terms.get((4, 0))
    if not a or a < 0:
        return None
    return f.terms.get((2, 2), Fraction(0)) / a


def _proj_roots(f: BiPoly, dps=40):
    """Complex roots of a binary form as homogeneous pairs with multiplicity."""
    P = f.restrict(y=1)
    d = f.total_degree()
    out = []
    with mpmath.workdps(dps):
        for s, k in P.squarefree_decomposition():
            if s.degree <= 0:
                continue
            cs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(s.coeffs)]
            rs = mpmath.polyroots(cs, maxsteps=200, extraprec=200) if s.degree > 1 else [-cs[1] / cs[0]]
            out.extend(((mpmath.mpc(r), mpmath.mpc(1)), k) for r in rs)
    if d - P.degree:
        out.append(((mpmath.mpc(1), mpmath.mpc(0)), d - P.degree))
    return out


def _frame(v1, v2, v3):
    """Matrix sending (1:0), (0:1), (1:1) to v1, v2, v3."""
    M = mpmath.matrix([[v1[0], v2[0]], [v1[1], v2[1]]])
    a, b = mpmath.lu_solve(M, mpmath.matrix([v3[0], v3[1]]))
    return mpmath.matrix([[a * v1[0], b * v2[0]], [a * v1[1], b * v2[1]]])


def _apply(f: BiPoly, L):
    return f.linear_change(*(Fraction(str(v)) for v in (L[0, 0], L[0, 1], L[1, 0], L[1, 1])))


def _linear_search(f: BiPoly, g: BiPoly, orientation_preserving, tol=1e-20):
    """Real 2x2 L with f = g o L, by matching ordered root triples."""
    d = f.total_degree()
    with mpmath.workdps(40):
        rf, rg = _proj_roots(f), _proj_roots(g)
        if sorted(k for _, k in rf) != sorted(k for _, k in rg) or len(rf) < 3:
            return None
        (v1, k1), (v2, k2), (v3, k3) = rf[:3]
        Ff = _frame(v1, v2, v3)
        for (w1, m1), (w2, m2), (w3, m3) in itertools.permutations(rg, 3):
            if (m1, m2, m3) != (k1, k2, k3):
                continue
            L = _frame(w1, w2, w3) * mpmath.inverse(Ff)
            # make L real up to a complex scalar
            piv = max((L[i, j] for i in range(2) for j in range(2)), key=abs)
            L = L / piv
            if max(abs(mpmath.im(L[i, j])) for i in range(2) for j in range(2)) > 1e-25:
                continue
            R = mpmath.matrix([[mpmath.re(L[i, j]) for j in range(2)] for i in range(2)])
            # f = kappa * g o R; read kappa off a generic point
            gx = lambda X, Y: sum(mpmath.mpf(c.numerator) / c.denominator * X ** i * Y ** j
                                  for (i, j), c in g.terms.items())
            fx = lambda X, Y: sum(mpmath.mpf(c.numerator) / c.denominator * X ** i * Y ** j
                                  for (i, j), c in f.terms.items())
            pts = [(mpmath.mpf(1), mpmath.mpf(k) / 7 + mpmath.mpf(1) / 3) for k in range(d + 2)]
            vals = [(fx(*p), gx(R[0, 0] * p[0] + R[0, 1] * p[1], R[1, 0] * p[0] + R[1, 1] * p[1])) for p in pts]
            kap = None
            ok = True
            for a, b in vals:
                if abs(b) < tol:
                    ok = abs(a) < 1e-15
                    if not ok:
                        break
                    continue
                k_ = a / b
                if kap is None:
                    kap = k_
                elif abs(k_ - kap) > 1e-18 * (1 + abs(kap)):
                    ok = False
                    break
            if not ok or kap is None:
                continue
            if kap < 0 and d % 2 == 0:
                continue
            s = mpmath.root(abs(kap), d) * (1 if kap > 0 else -1)
            R = R * s
            det = R[0, 0] * R[1, 1] - R[0, 1] * R[1, 0]
            if orientation_preserving and det < 0:
                continue
            return [[float(R[i, j]) for j in range(2)] for i in range(2)]
    return None


def _monomial_compare(mf, mg):
    if mf.kind == "none" or mg.kind == "none":
        return Verdict("not-equivalent", "exactly one germ is monomial-like")
    if mf.normal_form() == mg.normal_form():
        k, l, s = mf.normal_form()
        return Verdict("equivalent", "monomial-like germs with the same normal form",
                       {"normal_form": f"{'-' if s < 0 else ''}x^{k}*y^{l}"})
    return Verdict("not-equivalent", "monomial-like normal forms differ")


def classify_weighted(f: BiPoly, g: BiPoly, relation: str = "c1",
                      orientation_preserving: bool = False) -> Verdict:
    if relation not in ("c1", "bilipschitz"):
        raise InputError("relation must be 'c1' or 'bilipschitz'")
    wf, wg = weighted_data(f), weighted_data(g)
    if wf is None or wg is None:
        raise InputError("both germs must be weighted homogeneous")
    mf, mg = monomial_like(f), monomial_like(g)
    if mf.kind != "none" or mg.kind != "none":
        return _monomial_compare(mf, mg)
    if (wf.p, wf.q, wf.d) != (wg.p, wg.q, wg.d):
        return Verdict("not-equivalent", "weights or weighted degree differ")
    cert = _c1_certificate(f, g, wf, wg, orientation_preserving)
    if relation == "c1":
        if cert is None:
            return Verdict("not-equivalent", _c1_reason(wf))
        return Verdict("equivalent", _c1_reason(wf, True), cert)
    if cert is not None:
        return Verdict("equivalent", "C^1 (hence bi-Lipschitz) certificate found", cert)
    return Verdict("inconclusive", "same weights and degree; no certificate")


def _c1_reason(w, ok=False):
    what = {"A": "linear equivalence", "B": "f(x,y) = g(c1 x - b y^q, c2 y)",
            "C": "f(x,y) = g(c1 x, c2 y)"}[w.case]
    return ("found " if ok else "no solution of ") + what


def _c1_certificate(f, g, wf, wg, orientation_preserving):
    if wf.case != "A":
        return _weighted_c1(wf, wg, f, g, orientation_preserving)
    tf, tg = _kt_param(f), _kt_param(g)
    if tf is not None and tg is not None:
        if tf == tg:
            return {"matrix": [[1, 0], [0, 1]], "rule": "t1 = t2"}
        if (tf + 2) * (tg + 2) == 16:
            return {"rule": "(t1+2)(t2+2) = 16", "t1": str(tf), "t2": str(tg)}
        return None
    if f.total_degree() % 2 == 0 and _definite_power(f) is not None:
        a, b = _definite_power(f), _definite_power(g)
        if a is not None and b is not None and a == b:
            return {"rule": "powers of definite quadratic forms", "power": a[0], "sign": a[1]}
        return None
    L = _linear_search(f, g, orientation_preserving)
    return None if L is None else {"matrix": L}


def _definite_power(f: BiPoly):
    """(k, sign) when f is A*Q^k with Q a definite quadratic form."""
    P = f.restrict(y=1)
    if P.degree != f.total_degree():
        return None
    sq = [(s, k) for s, k in P.squarefree_decomposition() if s.degree > 0]
    if len(sq) != 1 or sq[0][0].degree != 2:
        return None
    s, k = sq[0]
    a, b, c = s.coeffs[2], s.coeffs[1], s.coeffs[0]
    if b * b - 4 * a * c >= 0:
        return None
    return (k, 1 if P.lead > 0 else -1)
