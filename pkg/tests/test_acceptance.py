"""Acceptance criteria 1-12, one test each.

Every test prints a single ``criterion N: PASS|FAIL ...`` line (shown even
under captured output).  Run directly with ``python tests/test_acceptance.py``
for the summary without pytest.
"""
import random
import sys
import time
from fractions import Fraction as F
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import random_bipoly  # noqa: E402
from planegerm.arith import BiPoly, UniPoly, isolate_real_roots, field_of  # noqa: E402
from planegerm.errors import InsufficientTruncation  # noqa: E402
from planegerm.fixtures import FIXTURES, corpus  # noqa: E402
from planegerm.invariants import (  # noqa: E402
    arc_oracle, c1_transfer_check, classify_weighted, fukui_set,
)
from planegerm.numeric import (  # noqa: E402
    FloatPoly, build_phi, example_51, phi_residual, solve_52, solve_53,
)
from planegerm.parser import parse_branch, parse_poly  # noqa: E402
from planegerm.polygon import (  # noqa: E402
    boundary_function, edge_polynomial, legendre_roundtrip_check, order_function,
    relative_polygon,
)
from planegerm.puiseux import DemiBranch, FracSeries, XShear, image_branch  # noqa: E402
from planegerm.tree import (  # noqa: E402
    Horn, blow_analytic_equivalent, build_real_tree, canonical_code,
    characteristic_data, mini_regularize, puiseux_roots, root_horn_test,
)


def report(n, ok, detail, capsys=None):
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    assert ok, line


def random_regular(rng, deg=5):
    f = random_bipoly(rng, deg, 4)
    if f.is_zero():
        f = BiPoly({(0, 3): 1})
    m = min(f.mult(), 4)
    if not f.terms.get((m, 0)):
        f = f + BiPoly({(m, 0): rng.choice([-2, -1, 1, 2])})
    return f


def random_branch(rng):
    exps = {F(rng.randint(2, 9), rng.choice([1, 2, 3])) for _ in range(rng.randint(0, 3))}
    exps = {e for e in exps if e >= 1}
    return FracSeries.from_dict({e: rng.choice([-2, -1, F(1, 2), 1, 3]) for e in exps})


# -- 1 ----------------------------------------------------------------------------------------

def crit1():
    t0 = time.perf_counter()
    f = parse_poly("x^2 - y^3")
    g1, g2 = parse_branch("y^(3/2)"), parse_branch("y^(3/2) + y^(5/2)")
    o1, o2 = order_function(f, g1), order_function(f, g2)
    ok = o1.pieces() == [(1, F(3, 2), 2, 0), (F(3, 2), None, 1, F(3, 2))]
    ok &= o2.pieces() == [(1, F(3, 2), 2, 0), (F(3, 2), F(5, 2), 1, F(3, 2)), (F(5, 2), None, 0, 4)]
    phi1 = [(p.lo, p.hi, p.intercept, p.slope) for p in boundary_function(relative_polygon(f, g1))]
    phi2 = [(p.lo, p.hi, p.intercept, p.slope) for p in boundary_function(relative_polygon(f, g2))]
    ok &= phi1 == [(0, 1, None, 0), (1, 2, 3, F(-3, 2))]
    ok &= phi2 == [(0, 1, 4, F(-5, 2)), (1, 2, 3, F(-3, 2))]
    dt = time.perf_counter() - t0
    return ok and dt < 1, f"order functions and boundaries exact, {dt:.3f}s"


# -- 2 ----------------------------------------------------------------------------------------

def crit2():
    rng = random.Random(2024)
    good = 0
    for _ in range(200):
        f, lam = random_regular(rng), random_branch(rng)
        good += legendre_roundtrip_check(relative_polygon(f, lam), order_function(f, lam))
    return good == 200, f"{good}/200 Legendre round trips"


# -- 3 ----------------------------------------------------------------------------------------

def crit3():
    t0 = time.perf_counter()
    A = fukui_set(FIXTURES["ex53-f"].poly(), 30)
    B = fukui_set(FIXTURES["ex53-g"].poly(), 30)
    dt = time.perf_counter() - t0
    ok = list(A.members) == [13] + list(range(22, 31)) and A.tail_from == 22 and A.has_infinity
    ok &= list(B.members) == [13, 23] + list(range(25, 31)) and B.tail_from == 25 and B.has_infinity
    return ok and dt < 30, f"A(f) = {A.describe()}, A(g) = {B.describe()}, {dt:.2f}s"


# -- 4 ----------------------------------------------------------------------------------------

def crit4():
    germs = [FIXTURES[n].poly() for n in ("ex51-f", "ex51-g", "ex52-f", "ex52-g", "ex53-f", "ex53-g")]
    rng = random.Random(44)
    while len(germs) < 26:
        f = random_bipoly(rng, 4, 3, coeffs=[-2, -1, 1, 2])
        if not f.is_zero():
            germs.append(f)
    bad = []
    for k, f in enumerate(germs):
        orc = arc_oracle(f, 30, degree=6, coeff_range=2, seed=k)
        missing = orc - set(fukui_set(f, 30).members)
        if missing:
            bad.append((f.to_str(), sorted(missing)))
    return not bad, f"{len(germs) - len(bad)}/{len(germs)} germs contain the arc oracle set" + (
        f"; violations {bad}" if bad else "")


# -- 5 ----------------------------------------------------------------------------------------

def crit5():
    x, y = BiPoly.x(), BiPoly.y()
    f51, g51 = FIXTURES["ex51-f"].poly(), FIXTURES["ex51-g"].poly()
    ok = g51.reflect(-1, 1) == f51
    ok &= not blow_analytic_equivalent(f51, g51, "orientation-preserving")
    ok &= blow_analytic_equivalent(f51, g51, "free")
    for a, b in (("ex52-f", "ex52-g"), ("ex53-f", "ex53-g")):
        f, g = FIXTURES[a].poly(), FIXTURES[b].poly()
        ok &= not blow_analytic_equivalent(f, g, "orientation-preserving")
        ok &= not blow_analytic_equivalent(f, g, "free")
    return ok, "first pair false/true by mode, second and third pairs false in both modes"


# -- 6 ----------------------------------------------------------------------------------------

def crit6():
    rng = random.Random(66)
    fails = []
    pool = [f for _, f in corpus() if not f.is_zero()]
    for k in range(50):
        f = pool[k % len(pool)] if k % 2 else random_regular(rng, 5)
        _, f = mini_regularize(f)
        low = 1 if k % 3 == 0 else 2
        p = UniPoly([0] * low + [rng.choice([-2, -1, 1, 2]) for _ in range(3)])
        g = f.x_shear(UniPoly([-c for c in p.coeffs]))  # f o sigma^-1, sigma = (x + p(y), y)
        ok = canonical_code(build_real_tree(f)) == canonical_code(build_real_tree(g))
        branches = [random_branch(rng)] + [r.branch.series for r in puiseux_roots(f) if r.real]
        for lam in branches:
            img = image_branch(XShear(p), DemiBranch(lam), 12)
            if lam.truncation is not None:
                img = DemiBranch(FracSeries(img.series.terms, lam.truncation))
            try:
                Pf, Pg = relative_polygon(f, lam), relative_polygon(g, img)
            except InsufficientTruncation:
                continue
            ok &= boundary_function(Pf) == boundary_function(Pg)
            if low >= 2:
                for xi in (F(3, 2), F(2), F(5, 2)):
                    if lam.truncation is None or xi < lam.truncation:
                        ok &= edge_polynomial(f, lam, xi).poly == edge_polynomial(g, img, xi).poly
        if not ok:
            fails.append(k)
    return not fails, f"{50 - len(fails)}/50 shear pairs agree" + (f"; failing {fails}" if fails else "")


# -- 7 ----------------------------------------------------------------------------------------

def crit7():
    x, y = BiPoly.x(), BiPoly.y()
    polar = {}
    for t in (F(1, 4), F(1), F(4)):
        A = x ** 3 - 3 * t * x * y ** 4 + 2 * y ** 6
        # polar branch x = sqrt(t) y^2 of dA/dx = 3x^2 - 3t y^4
        r = [a for a, _ in isolate_real_roots(UniPoly([-t, 0, 1])) if a.sign() > 0][0]
        s = r.rational_value() if r.is_rational() else field_of(r).gen()
        polar[t] = edge_polynomial(A, FracSeries.from_dict({F(2): s}), 2)
    table = {(t, u): c1_transfer_check(polar[t], polar[u]).holds for t in polar for u in polar}
    ok = all(v == (t == u) for (t, u), v in table.items())
    return ok, f"{sum(v == (t == u) for (t, u), v in table.items())}/9 ordered pairs as expected"


# -- 8 ----------------------------------------------------------------------------------------

def crit8():
    K = lambda t: parse_poly(f"x^4 + {t}*x^2*y^2 + y^4")
    v06 = classify_weighted(K(0), K(6), "c1").verdict
    v01 = classify_weighted(K(0), K(1), "c1").verdict
    return v06 == "equivalent" and v01 == "not-equivalent", f"K0~K6: {v06}, K0~K1: {v01}"


# -- 9 ----------------------------------------------------------------------------------------

def crit9():
    cm = build_phi(FloatPoly([0, -1, 0, 0, 1]), FloatPoly([0, 1, 0, 0, 1]), F(5, 3))
    res, viol = phi_residual(cm, n=10_000)
    _, r1 = example_51(100_000, 0)
    _, r4 = example_51(400_000, 0)
    lo, hi = r1.lipschitz_min, r1.lipschitz_max
    stable = abs(r4.lipschitz_min - lo) <= 0.1 * lo and abs(r4.lipschitz_max - hi) <= 0.1 * hi
    ok = res < 1e-8 and viol == 0 and r1.residual_max < 1e-8 and 1e-2 <= lo <= hi <= 1e2 and stable
    return ok, (f"phi residual {res:.1e}, {viol} monotonicity violations, sample residual "
                f"{r1.residual_max:.1e}, Lipschitz [{lo:.3f}, {hi:.3f}] -> "
                f"[{r4.lipschitz_min:.3f}, {r4.lipschitz_max:.3f}] at 4x samples")


# -- 10 ---------------------------------------------------------------------------------------

def crit10():
    a2, b2, r2 = solve_52()
    a3, b3, r3 = solve_53()
    a2h, b2h, _ = solve_52(5e-14)
    a3h, b3h, _ = solve_53(5e-14)
    drift = max(abs(a2 - a2h), abs(b2 - b2h), abs(a3 - a3h), abs(b3 - b3h))
    ok = 0 < a2 < b2 and r2 < 1e-9 and a3 > 0 and b3 > 0 and 100 * a3 ** 2 < 273 * b3 and r3 < 1e-9
    ok &= drift < 1e-6
    return ok, (f"(a, b) = ({a2:.9f}, {b2:.9f}) res {r2:.1e}; ({a3:.9f}, {b3:.9f}) res {r3:.1e}; "
                f"re-solve drift {drift:.1e}")


# -- 11 ---------------------------------------------------------------------------------------

def crit11():
    n_bar = n_mid = 0
    bad = []
    for name, f in corpus():
        T = build_real_tree(f)
        _, g = mini_regularize(f)
        for d in T.directions:
            w = g if d.half > 0 else g.reflect(-1, -1)
            for b in d.bar.walk():
                if b.infinite:
                    continue
                r = root_horn_test(w, Horn(b.truncation, b.height))
                n_bar += 1
                if not (r and r.height == b.height and r.multiplicity == b.multiplicity):
                    bad.append((name, "bar", b.height))
                n_mid += 1
                if root_horn_test(w, Horn(b.truncation, (b.base + b.height) / 2)):
                    bad.append((name, "mid", b.height))
    return not bad, f"{n_bar} bars confirmed, {n_mid} midpoints rejected" + (f"; bad {bad}" if bad else "")


# -- 12 ---------------------------------------------------------------------------------------

def crit12():
    rng = random.Random(12)
    bad, n = [], 0
    for name, f in corpus():
        _, g = mini_regularize(f)
        p = UniPoly([0, 0] + [rng.choice([-2, -1, 1, 2]) for _ in range(3)])
        h = g.x_shear(UniPoly([-c for c in p.coeffs]))
        for half in (1, -1):
            def data(q):
                out = []
                for r in puiseux_roots(q, half):
                    if r.real:
                        c = characteristic_data(r)
                        out.append((c.pairs, c.coeff_signs))
                return sorted(out)

            dg, dh = data(g), data(h)
            n += len(dg)
            if dg != dh:
                bad.append((name, half))
        for r in puiseux_roots(g):
            if r.real:
                a = characteristic_data(r.branch)
                b = characteristic_data(image_branch(XShear(p), r.branch, 8))
                if (a.pairs, a.coeff_signs) != (b.pairs, b.coeff_signs):
                    bad.append((name, "image"))
    return not bad, f"{n} real roots, characteristic data unchanged" + (f"; bad {bad}" if bad else "")


CRITERIA = [crit1, crit2, crit3, crit4, crit5, crit6, crit7, crit8, crit9, crit10, crit11, crit12]


@pytest.mark.parametrize("n", range(1, 13))
def test_criterion(n, capsys):
    ok, detail = CRITERIA[n - 1]()
    report(n, ok, detail, capsys)


if __name__ == "__main__":
    failed = 0
    for n, fn in enumerate(CRITERIA, 1):
        try:
            ok, detail = fn()
        except Exception as e:  # report and keep going
            ok, detail = False, f"raised {e!r}"
        print(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        failed += not ok
    sys.exit(1 if failed else 0)
