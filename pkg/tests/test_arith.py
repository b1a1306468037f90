import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planegerm.arith import (
    BiPoly, QQ, RealAlg, UniPoly, common_field, distinct_complex_root_count, field_of,
    isolate_real_roots, minimal_polynomial, nth_root, qq, real_roots, sign_at,
    squarefree_factor_bipoly,
)
from planegerm.arith.realalg import eval_interval
from planegerm.errors import InputError

coeff_lists = st.lists(st.integers(-6, 6), min_size=1, max_size=7)


def sqrt2():
    return [a for a, _ in isolate_real_roots(UniPoly([-2, 0, 1])) if a.sign() > 0][0]


class TestIsolation:
    def test_sqrt2_pair(self):
        rs = isolate_real_roots(UniPoly([-2, 0, 1]))
        assert [k for _, k in rs] == [1, 1]
        lo, hi = rs
        assert lo[0] < hi[0]
        assert hi[0].lo >= lo[0].hi  # disjoint open intervals
        assert abs(float(hi[0]) - math.sqrt(2)) < 1e-9
        assert abs(float(lo[0]) + math.sqrt(2)) < 1e-9

    def test_septic_real_roots(self):
        p = UniPoly([0, 1]) * UniPoly([-1, 0, 0, 1]) * UniPoly([1, 0, 0, 1])
        rs = isolate_real_roots(p)
        assert [(a.rational_value(), k) for a, k in rs] == [(-1, 1), (0, 1), (1, 1)]

    def test_repeated_rational_root(self):
        rs = isolate_real_roots(UniPoly([-1, 1]) ** 3)
        assert len(rs) == 1 and rs[0][0].rational_value() == 1 and rs[0][1] == 3

    def test_zero_rejected(self):
        with pytest.raises(InputError):
            isolate_real_roots(UniPoly([]))

    @given(coeff_lists)
    @settings(max_examples=60, deadline=None)
    def test_roots_sorted_and_counted(self, cs):
        p = UniPoly(cs)
        if p.is_zero():
            return
        rs = isolate_real_roots(p)
        assert sum(k for _, k in rs) <= p.degree
        vals = [float(a) for a, _ in rs]
        assert vals == sorted(vals)
        for a, _ in rs:
            assert abs(p(Fraction_mid(a))) < 1e-6 * (1 + sum(abs(c) for c in cs))

    @given(coeff_lists)
    @settings(max_examples=40, deadline=None)
    def test_interval_contains_zero_after_refinement(self, cs):
        p = UniPoly(cs)
        if p.is_zero():
            return
        for a, _ in isolate_real_roots(p):
            for w in (F(1, 4), F(1, 64), F(1, 4096)):
                r = a.refined(w)
                lo, hi = eval_interval(p, r.lo, r.hi)
                assert lo <= 0 <= hi


def Fraction_mid(a):
    r = a.refined(F(1, 10 ** 9))
    return (r.lo + r.hi) / 2


class TestDistinctRoots:
    def test_examples(self):
        assert distinct_complex_root_count(UniPoly([0, 2, 1])) == 2
        assert distinct_complex_root_count(UniPoly([-1, 1]) ** 4) == 1
        assert distinct_complex_root_count(UniPoly([0, -1, 0, 0, 1])) == 4

    @given(coeff_lists)
    @settings(max_examples=60, deadline=None)
    def test_gcd_identity(self, cs):
        p = UniPoly(cs)
        if p.degree < 1:
            return
        g = p.gcd(p.derivative())
        assert distinct_complex_root_count(p) + g.degree == p.degree


class TestSquarefree:
    def test_examples(self, xy):
        x, y = xy
        got = squarefree_factor_bipoly(x ** 2 * (x - y) ** 3)
        assert sorted((f.to_str(), k) for f, k in got) == [("x", 2), ("x - y", 3)]
        f = x * (x ** 3 - y ** 5)
        assert squarefree_factor_bipoly(f) == [(f, 1)]
        got = squarefree_factor_bipoly((x ** 2 + y ** 2) ** 2)
        assert got == [(x ** 2 + y ** 2, 2)]

    def test_reassembly(self):
        rng = random.Random(3)
        from conftest import random_bipoly

        for _ in range(25):
            a, b = random_bipoly(rng, 3, 3), random_bipoly(rng, 3, 3)
            if a.is_zero() or b.is_zero():
                continue
            f = a * b ** 2
            prod = BiPoly.const(1)
            for fac, k in squarefree_factor_bipoly(f):
                prod = prod * fac ** k
            # equal up to a rational unit
            (key, c), *_ = f.terms.items()
            unit = c / prod.terms[key]
            assert prod * unit == f


class TestSignAt:
    def test_examples(self):
        r = sqrt2()
        assert sign_at(UniPoly([-2, 0, 1]), r) == 0
        assert sign_at(UniPoly([-1, 1]), r) == 1

    def test_arnold_critical_value(self):
        # z^3 + 3 sqrt(t) z^2 + 2(1 - t sqrt t) at t = 4: sqrt t = 2
        P = UniPoly([2 * (1 - 8), 0, 6, 1])
        crit = [a for a, _ in isolate_real_roots(P.derivative())]
        for a in crit:
            s = sign_at(P, a)
            v = float(P(Fraction_mid(a)))
            assert s == (v > 0) - (v < 0)

    @given(coeff_lists, st.integers(-5, 5))
    @settings(max_examples=60, deadline=None)
    def test_agrees_with_float(self, cs, k):
        p = UniPoly(cs)
        a = RealAlg.rational(F(k, 3))
        v = float(p(F(k, 3)))
        if abs(v) > 1e-6:
            assert sign_at(p, a) == (1 if v > 0 else -1)


class TestFields:
    def test_sqrt2_arithmetic(self):
        K = field_of(sqrt2())
        r = K.gen()
        assert r * r == qq(2)
        assert (r + 1) * (r - 1) == qq(1)
        assert ((r + 1) ** -1) == r - 1
        assert r.sign() == 1 and (1 - r).sign() == -1
        assert minimal_polynomial(r + 1) == UniPoly([-1, -2, 1])

    def test_roots_over_extension(self):
        K = field_of(sqrt2())
        r = K.gen()
        # z^2 - sqrt2 has roots +-2^(1/4)
        S = UniPoly([-r, 0, 1], K)
        roots = real_roots(S)
        assert len(roots) == 2
        for z in roots:
            assert z * z == r
        assert abs(float(roots[1]) - 2 ** 0.25) < 1e-9

    def test_nth_root(self):
        c = nth_root(qq(8), 3)
        assert c == qq(2)
        t = nth_root(qq(3), 2)
        assert t * t == qq(3)
        with pytest.raises(InputError):
            nth_root(qq(-1), 2)

    def test_compositum_comparison(self):
        a = field_of(sqrt2()).gen()
        b = nth_root(qq(3), 2)
        assert a < b
        K = common_field(a, b)
        assert K.degree == 4
        s = K.embed(a) + K.embed(b)
        assert abs(float(s) - (2 ** 0.5 + 3 ** 0.5)) < 1e-9
        assert (K.embed(a) ** 2) == qq(2)

    def test_qq(self):
        assert QQ.degree == 1
        assert qq(F(1, 2)) + qq(F(1, 2)) == qq(1)


class TestBiPoly:
    def test_arith_and_print(self, xy):
        x, y = xy
        f = x * (x ** 3 - y ** 5)
        assert f.terms == {(4, 0): 1, (1, 5): -1}
        assert f.mult() == 4
        assert f.initial_form() == x ** 4
        assert (f - f).is_zero()

    def test_reflection_identity(self, xy):
        x, y = xy
        f, g = x * (x ** 3 - y ** 5), x * (x ** 3 + y ** 5)
        assert g.reflect(-1, 1) == f

    def test_linear_change(self, xy):
        x, y = xy
        f = x ** 2 - y
        assert f.linear_change(1, 1, 0, 1) == (x + y) ** 2 - y

    def test_sympy_roundtrip(self, xy):
        x, y = xy
        f = F(1, 3) * x ** 2 * y - 7 * y ** 4
        assert BiPoly.from_sympy(f.to_sympy().as_expr()) == f
