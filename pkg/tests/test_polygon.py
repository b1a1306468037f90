import random
from fractions import Fraction as F

import mpmath
import pytest

from planegerm.arith import BiPoly, UniPoly, isolate_real_roots, field_of
from planegerm.errors import InputError, InsufficientTruncation, NotMiniRegular
from planegerm.polygon import (
    RelPolygon, boundary_function, edge_polynomial, initial_newton_polynomial,
    legendre_roundtrip_check, order_function, relative_polygon,
)
from planegerm.puiseux import DemiBranch, FracSeries, image_branch, XShear
from conftest import random_bipoly

S = FracSeries.from_dict
G1 = S({F(3, 2): 1})
G2 = S({F(3, 2): 1, F(5, 2): 1})


@pytest.fixture
def cusp(xy):
    x, y = xy
    return x ** 2 - y ** 3


def random_regular(rng, deg=5):
    f = random_bipoly(rng, deg, 4)
    m = f.mult() if not f.is_zero() else 2
    m = max(1, min(m, 4))
    return f + BiPoly({(m, 0): rng.choice([-2, -1, 1, 2])}) if not f.terms.get((m, 0)) else f


def random_branch(rng):
    exps = sorted({F(rng.randint(2, 9), rng.choice([1, 2, 3])) for _ in range(rng.randint(0, 3))})
    exps = [e for e in exps if e >= 1]
    return S({e: rng.choice([-2, -1, F(1, 2), 1, 3]) for e in exps})


class TestPolygon:
    def test_cusp(self, cusp):
        assert relative_polygon(cusp, G1).vertices == ((1, F(3, 2)), (2, 0))
        assert relative_polygon(cusp, G2).vertices == ((0, 4), (1, F(3, 2)), (2, 0))

    def test_pure_power(self, xy):
        x, _ = xy
        assert relative_polygon(x ** 2, FracSeries.zero()).vertices == ((2, 0),)

    def test_not_mini_regular(self, xy):
        x, y = xy
        with pytest.raises(NotMiniRegular):
            relative_polygon(x * y, FracSeries.zero())

    def test_boundary_functions(self, cusp):
        phi1 = boundary_function(relative_polygon(cusp, G1))
        assert phi1[0].intercept is None and (phi1[0].lo, phi1[0].hi) == (0, 1)
        assert (phi1[1].lo, phi1[1].hi, phi1[1].intercept, phi1[1].slope) == (1, 2, 3, F(-3, 2))
        phi2 = boundary_function(relative_polygon(cusp, G2))
        assert [(p.lo, p.hi, p.intercept, p.slope) for p in phi2] == [
            (0, 1, 4, F(-5, 2)), (1, 2, 3, F(-3, 2))]

    def test_truncated_branch_rejected(self, cusp):
        with pytest.raises(InsufficientTruncation):
            relative_polygon(cusp, S({F(3, 2): 1}, truncation=F(2)))


class TestOrderFunction:
    def test_cusp(self, cusp):
        o1 = order_function(cusp, G1)
        assert o1.breakpoints == ((1, 2), (F(3, 2), 3))
        assert o1.slopes == (2, 1)
        o2 = order_function(cusp, G2)
        assert o2.breakpoints == ((1, 2), (F(3, 2), 3), (F(5, 2), 4))
        assert o2.slopes == (2, 1, 0)
        assert o2(10) == 4 and o2(2) == F(7, 2)

    def test_monomial(self, xy):
        x, y = xy
        o = order_function(x * y, FracSeries.zero())
        assert o.breakpoints == ((1, 2),) and o.slopes == (1,)
        assert o(F(7, 3)) == 1 + F(7, 3)

    def test_domain(self, cusp):
        with pytest.raises(InputError):
            order_function(cusp, G1)(F(1, 2))

    def test_truncation_certifies_range(self, cusp):
        o = order_function(cusp, S({F(3, 2): 1}, truncation=F(2)))
        assert o(F(3, 2)) == 3
        with pytest.raises(InsufficientTruncation):
            o(10)

    def test_ord_at_one_is_multiplicity(self):
        rng = random.Random(4)
        for _ in range(30):
            f = random_regular(rng)
            lam = random_branch(rng)
            assert order_function(f, lam)(1) == f.mult()
            assert edge_polynomial(f, lam, 1).poly.degree == f.mult()


class TestEdgePolynomial:
    def test_cusp(self, cusp):
        e = edge_polynomial(cusp, G1, F(3, 2))
        assert e.poly == UniPoly([0, 2, 1]) and e.ord == 3
        e = edge_polynomial(cusp, G1, 2)
        assert e.poly == UniPoly([0, 2]) and e.ord == F(7, 2)

    def test_arnold(self, xy):
        x, y = xy
        for t in (F(1, 4), F(1), F(4), F(2)):
            A = x ** 3 - 3 * t * x * y ** 4 + 2 * y ** 6
            r = [a for a, _ in isolate_real_roots(UniPoly([-t, 0, 1])) if a.sign() > 0][0]
            s = r.rational_value() if r.is_rational() else field_of(r).gen()
            e = edge_polynomial(A, S({F(2): s}), 2)
            assert e.ord == 6
            assert [c for c in e.poly.coeffs] == [2 * (1 - t * s), 0 * s, 3 * s, 1]

    def test_numeric_oracle(self):
        # |f(lambda + z y^xi, y)| / y^ord -> |P(z)| as y -> 0
        def mp(q):
            q = q if isinstance(q, F) else q.rational_value()
            return mpmath.mpf(q.numerator) / q.denominator

        rng = random.Random(8)
        with mpmath.workdps(120):
            y = mpmath.mpf(10) ** -60
            for _ in range(15):
                f = random_regular(rng, 4)
                lam = random_branch(rng)
                xi = F(rng.randint(3, 8), 2)
                e = edge_polynomial(f, lam, xi)
                for z in (F(1, 3), F(-5, 4), F(2)):
                    Pz = sum(mp(c) * mp(z) ** k for k, c in enumerate(e.poly.coeffs))
                    if abs(Pz) < 1e-3:
                        continue
                    X = sum((mp(c) * y ** mp(ex) for ex, c in lam.terms), mpmath.mpf(0))
                    X += mp(z) * y ** mp(xi)
                    val = sum(mp(c) * X ** i * y ** j for (i, j), c in f.terms.items())
                    assert abs(val / y ** mp(e.ord) - Pz) <= 1e-6 * abs(Pz)

    def test_generic_tail_limit(self, cusp):
        with pytest.raises(InputError):
            edge_polynomial(cusp, DemiBranch(G1, F(2)), F(5, 2))


class TestInitialNewton:
    def test_cusp(self, cusp):
        assert initial_newton_polynomial(cusp, G1).terms == {(2, 0): 1, (1, F(3, 2)): 2}
        assert initial_newton_polynomial(cusp, G2).terms == {(2, 0): 1, (1, F(3, 2)): 2, (0, 4): 2}

    def test_homogeneous(self, xy):
        x, y = xy
        f = x ** 3 - 2 * x * y ** 2 + y ** 3
        got = initial_newton_polynomial(f, FracSeries.zero())
        assert got.terms == {(i, F(j)): c for (i, j), c in f.terms.items()}


class TestLegendre:
    def test_cusp(self, cusp):
        assert legendre_roundtrip_check(relative_polygon(cusp, G1), order_function(cusp, G1))

    def test_perturbed(self, cusp):
        P = relative_polygon(cusp, G1)
        bad = RelPolygon(((1, F(5, 2)), (2, 0)))
        assert not legendre_roundtrip_check(bad, order_function(cusp, G1))
        assert legendre_roundtrip_check(P, order_function(cusp, G1))

    def test_random(self):
        rng = random.Random(100)
        for _ in range(100):
            f, lam = random_regular(rng), random_branch(rng)
            assert legendre_roundtrip_check(relative_polygon(f, lam), order_function(f, lam))


class TestShearInvariance:
    """NB and edge polynomials along matched branches under (x + p(y), y)."""

    def test_random_shears(self):
        rng = random.Random(21)
        for k in range(30):
            f, lam = random_regular(rng), random_branch(rng)
            low = 1 if k % 2 else 2
            p = UniPoly([0] * low + [rng.choice([-2, -1, 1, 2]) for _ in range(3)])
            g = f.x_shear(UniPoly([-c for c in p.coeffs]))  # g = f o sigma^-1
            img = image_branch(XShear(p), DemiBranch(lam), 10)
            assert relative_polygon(f, lam).vertices == relative_polygon(g, img).vertices
            if low >= 2:
                for xi in (F(3, 2), F(2), F(7, 3), F(3)):
                    assert edge_polynomial(f, lam, xi).poly == edge_polynomial(g, img, xi).poly
