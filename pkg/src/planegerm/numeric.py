"""Floating-point companion: critical values, the conjugacy phi = Q^-1 o P, sampling checks.

Everything here measures; nothing certifies.  Root and inverse solves use
bisection on brackets only.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .arith import BiPoly, UniPoly, isolate_real_roots_q
from .errors import InputError


class NoSignChange(InputError):
    """Bracketed solve found no sign change; ``report`` lists what was scanned."""

    def __init__(self, msg, report):
        super().__init__(msg)
        self.report = report


@dataclass(frozen=True)
class FloatPoly:
    coeffs: tuple  # ascending

    def __init__(self, coeffs):
        cs = [float(c) for c in coeffs]
        if not all(np.isfinite(cs)):
            raise InputError("non-finite coefficient")
        while cs and cs[-1] == 0.0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_unipoly(cls, p: UniPoly):
        return cls([float(c) for c in p.coeffs])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, self.coeffs)

    def derivative(self):
        return FloatPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def exact(self) -> UniPoly:
        return UniPoly([Fraction(c) for c in self.coeffs])


def _as_fpoly(P):
    if isinstance(P, FloatPoly):
        return P
    if isinstance(P, UniPoly):
        return FloatPoly.from_unipoly(P)
    return FloatPoly(P)


def _refine(r, tol):
    while r.hi - r.lo > tol:
        r = r.bisect()
    return r


def critical_data(P, tol=1e-12, extrema_only=False):
    """Real critical points with their values, ascending.

    With ``extrema_only`` only points where P' changes sign are kept.
    """
    P = _as_fpoly(P)
    if P.degree < 2:
        raise InputError("critical points need degree >= 2")
    dP = P.exact().derivative()
    out = []
    for r, k in isolate_real_roots_q(dP):
        if extrema_only and k % 2 == 0:
            continue
        if r.is_rational():
            z = float(r.rational_value())
        else:
            r = _refine(r, Fraction(tol))
            z = float((r.lo + r.hi) / 2)
        out.append((z, float(P(z))))
    return out


# -- matching critical values ------------------------------------------------------------

def _nonzero_values(P, tol=1e-14):
    return [v for _, v in critical_data(P, extrema_only=True) if abs(v) > tol]


def _bisect(fn, lo, hi, tol):
    flo, fhi = fn(lo), fn(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise NoSignChange(
            "no sign change in bracket",
            {"bracket": [lo, hi], "values": [flo, fhi]},
        )
    for _ in range(400):
        mid = (lo + hi) / 2
        if hi - lo <= tol * max(1.0, abs(mid)) or mid in (lo, hi):
            break
        fm = fn(mid)
        if fm == 0:
            return mid
        if np.sign(fm) == np.sign(flo):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


@dataclass(frozen=True)
class Homogeneity:
    """Q_{a,b}(alpha z) = alpha^deg * Q_{a/alpha^wa, b/alpha^wb}(z)."""

    wa: int
    wb: int
    deg: int


def match_critical_values(
    target: Sequence[float],
    family: Callable[[float, float], FloatPoly],
    constraints: Optional[Callable[[float, float], bool]] = None,
    *,
    free: str = "a",
    fixed: float = 1.0,
    bracket=(1e-6, 1.0),
    homogeneity: Optional[Homogeneity] = None,
    values: Optional[Callable[[FloatPoly], list]] = None,
    tol=1e-13,
):
    """(a, b) with the family's nonzero critical values equal to ``target``.

    One free parameter is bisected with the other fixed.  For two targets
    the inner solve matches their ratio and the homogeneity rescaling then
    fixes the size; a single target is matched directly.
    """
    values = values or (lambda Q: _nonzero_values(Q))
    target = [float(t) for t in target]

    def params(s):
        return (s, fixed) if free == "a" else (fixed, s)

    def vals(s):
        v = values(family(*params(s)))
        if len(v) != len(target):
            raise InputError(f"family has {len(v)} nonzero critical values, expected {len(target)}")
        return v

    if len(target) >= 2:
        if homogeneity is None:
            raise InputError("two targets need the homogeneity rescaling")
        t0, t1 = target[0], target[1]

        def h(s):
            v = vals(s)
            return v[0] * t1 - v[1] * t0

        s = _bisect(h, bracket[0], bracket[1], tol)
        a, b = params(s)
        v0 = vals(s)[0]
        ratio = v0 / t0
        if ratio <= 0:
            raise InputError("critical value signs do not match the target")
        alpha = ratio ** (1.0 / homogeneity.deg)
        a, b = a / alpha ** homogeneity.wa, b / alpha ** homogeneity.wb
    else:
        s = _bisect(lambda s: vals(s)[0] - target[0], bracket[0], bracket[1], tol)
        a, b = params(s)
    got = values(family(a, b))
    resid = max(abs(g - t) for g, t in zip(got, target))
    if constraints is not None and not constraints(a, b):
        raise InputError(f"constraints fail at a={a}, b={b}")
    return a, b, resid


# -- the two families -----------------------------------------------------------------------

def Q52(a, b) -> FloatPoly:
    """z(z^3 - a)(z^3 - b)."""
    return FloatPoly([0, a * b, 0, 0, -(a + b), 0, 0, 1])


P52 = FloatPoly([0, -1, 0, 0, 0, 0, 0, 1])  # z(z^3-1)(z^3+1)


def Q53(a, b) -> FloatPoly:
    """z^4 (z^3 + a)(z^6 + b)."""
    c = [0.0] * 14
    c[4] = a * b
    c[7] = b
    c[10] = a
    c[13] = 1.0
    return FloatPoly(c)


P53 = FloatPoly.from_unipoly(UniPoly([0, 1]) * UniPoly([-1, 0, 0, 1]) ** 4)  # z(z^3-1)^4


def solve_52(tol=1e-13):
    """(a, b) with Q52 critical values equal those of z^7 - z, 0 < a < b."""
    target = _nonzero_values(P52)
    return match_critical_values(
        target, Q52, lambda a, b: 0 < a < b,
        free="a", fixed=1.0, bracket=(1e-4, 1.0 - 1e-4),
        homogeneity=Homogeneity(3, 3, 7), tol=tol,
    )


def solve_53(tol=1e-13):
    """(a, b) with 100a^2 < 273b and the nonzero critical value of Q53 equal to A1."""
    target = _nonzero_values(P53)
    return match_critical_values(
        target, Q53, lambda a, b: a > 0 and b > 0 and 100 * a * a < 273 * b,
        free="b", fixed=1.0, bracket=(100 / 273 * (1 + 1e-9), 1e3), tol=tol,
    )


# -- conjugacy --------------------------------------------------------------------------------

@dataclass(frozen=True)
class ConjugacyMap:
    P: FloatPoly
    Q: FloatPoly
    p_crit: tuple  # extremum points of P, ascending
    q_crit: tuple
    xi: Fraction

    def _brackets(self, k, targets):
        lo = self.q_crit[k - 1] if k > 0 else None
        hi = self.q_crit[k] if k < len(self.q_crit) else None
        Q = self.Q
        if lo is None and hi is None:
            lo = -1.0
            while self.Q(lo) != self.Q(lo) or not self._covers(lo, -lo, targets):
                lo *= 2
                if lo < -1e300:
                    raise InputError("cannot bracket Q inverse")
            return lo, -lo
        if lo is None or hi is None:
            ref = hi if lo is None else lo
            step = 1.0
            while True:
                end = ref - step if lo is None else ref + step
                ve = Q(end)
                vr = Q(ref)
                lo_v, hi_v = min(ve, vr), max(ve, vr)
                if np.all((targets >= lo_v) & (targets <= hi_v)):
                    break
                step *= 2
                if step > 1e300:
                    raise InputError("cannot bracket Q inverse")
            if lo is None:
                lo = end
            else:
                hi = end
        return lo, hi

    def _covers(self, lo, hi, targets):
        a, b = self.Q(lo), self.Q(hi)
        return bool(np.all((targets >= min(a, b)) & (targets <= max(a, b))))

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        scalar = z.ndim == 0
        z = np.atleast_1d(z)
        out = np.empty_like(z)
        piece = np.searchsorted(np.asarray(self.p_crit), z)
        tv = self.P(z)
        for k in range(len(self.p_crit) + 1):
            sel = piece == k
            if not sel.any():
                continue
            t = tv[sel]
            lo, hi = self._brackets(k, t)
            up = self.Q(hi) > self.Q(lo)
            a = np.full(t.shape, lo)
            b = np.full(t.shape, hi)
            for _ in range(2000):
                m = (a + b) / 2
                qm = self.Q(m)
                go_right = (qm < t) if up else (qm > t)
                a = np.where(go_right, m, a)
                b = np.where(go_right, b, m)
                if np.all((b - a) <= 4 * np.spacing(np.maximum(np.abs(a), np.abs(b)))):
                    break
            out[sel] = (a + b) / 2
        # matched critical points correspond exactly; bisection there is only
        # good to about the square root of the rounding in the critical values
        for zp, zq in zip(self.p_crit, self.q_crit):
            out[z == zp] = zq
        return out[0] if scalar else out


def build_phi(P, Q, xi=Fraction(1), tol=1e-9) -> ConjugacyMap:
    """The increasing phi with P = Q o phi, piece by piece."""
    P, Q = _as_fpoly(P), _as_fpoly(Q)
    if P.degree != Q.degree or np.sign(P.coeffs[-1]) != np.sign(Q.coeffs[-1]):
        raise InputError("P and Q must have the same end behaviour")
    cp = critical_data(P, extrema_only=True) if P.degree >= 2 else []
    cq = critical_data(Q, extrema_only=True) if Q.degree >= 2 else []
    if len(cp) != len(cq):
        raise InputError("P and Q have different numbers of monotone pieces")
    for (_, u), (_, v) in zip(cp, cq):
        if abs(u - v) > tol * (1 + abs(u)):
            raise InputError(f"critical values differ: {u} vs {v}")
    return ConjugacyMap(P, Q, tuple(z for z, _ in cp), tuple(z for z, _ in cq), Fraction(xi))


def phi_residual(cm: ConjugacyMap, n=10_000, span=None):
    """max |P(z) - Q(phi(z))| / (1 + |P(z)|) on a grid covering every piece."""
    pts = list(cm.p_crit)
    lo = (min(pts) if pts else 0.0) - (span or 10.0)
    hi = (max(pts) if pts else 0.0) + (span or 10.0)
    z = np.linspace(lo, hi, n)
    z = np.sort(np.concatenate([z, np.asarray(pts, dtype=float)]))
    w = cm(z)
    res = np.abs(cm.P(z) - cm.Q(w)) / (1 + np.abs(cm.P(z)))
    violations = int(np.sum(np.diff(w) <= 0))
    return float(res.max()), violations


def phi_derivative_bounds(cm: ConjugacyMap, zmax=1e4, n=20_001):
    """Finite-difference sup of |phi'| and |phi - z phi'| over |z| <= zmax."""
    z = np.concatenate([-np.geomspace(zmax, 1e-3, n // 2), np.linspace(-1e-3, 1e-3, 11),
                        np.geomspace(1e-3, zmax, n // 2)])
    h = 1e-6 * np.maximum(1.0, np.abs(z))
    d = (cm(z + h) - cm(z - h)) / (2 * h)
    return float(np.max(np.abs(d))), float(np.max(np.abs(cm(z) - z * d)))


# -- sampling verification --------------------------------------------------------------------

@dataclass(frozen=True)
class VerificationReport:
    residual_max: float
    lipschitz_min: float
    lipschitz_max: float
    monotonicity_violations: int
    samples: int
    seed: int

    def to_json(self):
        return {
            "residual_max": self.residual_max,
            "lipschitz_min": self.lipschitz_min,
            "lipschitz_max": self.lipschitz_max,
            "monotonicity_violations": self.monotonicity_violations,
            "samples": self.samples,
            "seed": self.seed,
        }

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)


def make_sigma(cm: Optional[ConjugacyMap], xi):
    """sigma(x, y) = (y^xi phi(x / y^xi), y) for y > 0; identity when cm is None."""
    xi = float(xi)

    def sigma(x, y):
        if cm is None:
            return np.asarray(x, float), np.asarray(y, float)
        s = np.power(y, xi)
        return s * cm(x / s), y

    return sigma


def _eval(f: BiPoly, x, y):
    acc = np.zeros_like(np.asarray(x, float))
    for (i, j), c in f.terms.items():
        acc = acc + float(c) * x ** i * y ** j
    return acc


def verify_conjugacy(f: BiPoly, g: BiPoly, sigma, xi, n_samples=100_000, seed=0,
                     ymax=0.125, zmax=10.0, scale_exp=None, cm=None):
    """Sample f - g o sigma and the Lipschitz ratios of sigma near the origin.

    Samples take y in (0, ymax] and x = z y^xi with |z| <= zmax.  The residual
    is normalized by |f| + y^scale_exp (the weighted order of f along y).
    """
    xi = float(xi)
    if scale_exp is None:
        from .invariants.weighted import weighted_data

        w = weighted_data(f)
        scale_exp = w.d / w.p if w is not None and not w.swapped else f.mult()
    rng = np.random.default_rng(seed)
    y = ymax * (1 - rng.random(n_samples))
    z = rng.uniform(-zmax, zmax, n_samples)
    x = z * y ** xi
    sx, sy = sigma(x, y)
    fv = _eval(f, x, y)
    gv = _eval(g, sx, sy)
    res = np.abs(fv - gv) / (np.abs(fv) + y ** float(scale_exp))
    # Lipschitz ratios: half local pairs, half independent pairs
    half = n_samples // 2
    y2 = y.copy()
    z2 = z.copy()
    y2[:half] = np.clip(y[:half] * (1 + rng.normal(0, 0.05, half)), 1e-12, ymax)
    z2[:half] = np.clip(z[:half] + rng.normal(0, 0.05, half), -zmax, zmax)
    perm = rng.permutation(n_samples - half) + half
    y2[half:] = y[perm]
    z2[half:] = z[perm]
    x2 = z2 * y2 ** xi
    tx, ty = sigma(x2, y2)
    num = np.hypot(sx - tx, sy - ty)
    den = np.hypot(x - x2, y - y2)
    ok = den > 0
    ratios = num[ok] / den[ok]
    viol = 0
    if cm is not None:
        _, viol = phi_residual(cm, n=10_000)
    return VerificationReport(
        float(res.max()), float(ratios.min()), float(ratios.max()), viol, n_samples, seed
    )


# -- the worked examples ------------------------------------------------------------------------

def example_51(n_samples=100_000, seed=0):
    x, y = BiPoly.x(), BiPoly.y()
    f = x * (x ** 3 - y ** 5)
    g = x * (x ** 3 + y ** 5)
    cm = build_phi(FloatPoly([0, -1, 0, 0, 1]), FloatPoly([0, 1, 0, 0, 1]), Fraction(5, 3))
    rep = verify_conjugacy(f, g, make_sigma(cm, cm.xi), cm.xi, n_samples, seed, cm=cm)
    return cm, rep


def example_52(n_samples=100_000, seed=0):
    a, b, _ = solve_52()
    x, y = BiPoly.x(), BiPoly.y()
    f = x * (x ** 3 - y ** 5) * (x ** 3 + y ** 5)
    fa, fb = Fraction(a), Fraction(b)
    g = x * (x ** 3 - fa * y ** 5) * (x ** 3 - fb * y ** 5)
    cm = build_phi(P52, Q52(a, b), Fraction(5, 3))
    rep = verify_conjugacy(f, g, make_sigma(cm, cm.xi), cm.xi, n_samples, seed, cm=cm)
    return (a, b), cm, rep
