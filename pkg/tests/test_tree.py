import random
from fractions import Fraction as F

import pytest

from planegerm.arith import UniPoly
from planegerm.errors import NotMiniRegular
from planegerm.fixtures import FIXTURES, corpus
from planegerm.parser import parse_poly
from planegerm.polygon import edge_polynomial
from planegerm.puiseux import DemiBranch, FracSeries, XShear, image_branch
from planegerm.tree import (
    Horn, blow_analytic_equivalent, build_real_tree, canonical_code,
    characteristic_data, lemma_puiseux_check, mini_regularize, puiseux_roots,
    render_tree, root_horn_test,
)

S = FracSeries.from_dict


def roots(src, half=1):
    return {(r.branch.series.to_str(), r.branch.generic_tail, r.multiplicity, r.real)
            for r in puiseux_roots(parse_poly(src), half)}


class TestMiniRegularize:
    def test_already_regular(self):
        f = parse_poly("x^2 - y^3")
        assert mini_regularize(f) == (0, f)
        g = parse_poly("(x - y)^2")
        assert mini_regularize(g) == (0, g)

    def test_y_squared(self):
        c, g = mini_regularize(parse_poly("y^2"))
        assert c == 1 and g == parse_poly("(x + y)^2")

    def test_smallest(self):
        # f_m(1, c) = c(c - 1)(c - 2) vanishes for c = 0, 1, 2
        c, g = mini_regularize(parse_poly("y*(y - x)*(y - 2*x)"))
        assert c == 3 and g.terms.get((3, 0))


class TestPuiseuxRoots:
    def test_cusp(self):
        assert roots("x^2 - y^3") == {("y^(3/2)", None, 1, True), ("-y^(3/2)", None, 1, True)}
        assert roots("x^2 - y^3", -1) == {("0", F(3, 2), 2, False)}

    def test_first_pair(self):
        assert roots("x*(x^3 - y^5)") == {
            ("0", None, 1, True), ("y^(5/3)", None, 1, True), ("0", F(5, 3), 2, False)}

    def test_second_pair(self):
        assert roots("x*(x^3 - y^5)*(x^3 + y^5)") == {
            ("0", None, 1, True), ("y^(5/3)", None, 1, True), ("-y^(5/3)", None, 1, True),
            ("0", F(5, 3), 4, False)}

    def test_multiplicity(self):
        assert roots("(x - y)^2") == {("y", None, 2, True)}

    def test_numeric_roots(self):
        # real roots really are roots: |f(lambda(y), y)| small against y^(ord)
        f = parse_poly("(x^2 - y^3)^2 - y^7")
        for r in puiseux_roots(f):
            if r.real:
                lam = r.branch.series
                for y in (1e-3, 1e-4):
                    x = sum(float(c) * y ** float(e) for e, c in lam.terms)
                    assert abs(f.eval_float(x, y)) < 1e-2 * y ** 6

    def test_not_regular(self):
        with pytest.raises(NotMiniRegular):
            puiseux_roots(parse_poly("x*y"))


class TestCharacteristicData:
    def test_examples(self):
        c = characteristic_data(S({F(3, 2): 1}))
        assert c.pairs == ((3, 2),) and c.coeff_signs == ("+",)
        c = characteristic_data(S({F(5, 3): 1}))
        assert c.pairs == ((5, 3),) and c.coeff_signs == ("+",)
        c = characteristic_data(S({F(2): 1, F(5, 2): 1, F(8, 3): -1}))
        assert c.pairs == ((5, 2), (16, 3)) and c.coeff_signs == ("+", "-")
        assert c.exponents == [F(5, 2), F(8, 3)]

    def test_smooth(self):
        assert characteristic_data(S({F(1): 2, F(3): -1})).pairs == ()

    def test_truncated_incomplete(self):
        assert not characteristic_data(S({F(3, 2): 1}, truncation=F(2))).complete

    def test_roots_of_nested(self):
        f = parse_poly("(x^2 - y^3)^2 - y^7")
        for r in puiseux_roots(f):
            if r.real:
                assert characteristic_data(r).pairs[0] == (3, 2)


class TestLemmaPuiseux:
    def test_examples(self):
        k, Pt = lemma_puiseux_check(UniPoly([0, 0, 0, 2, 0, 0, 0, 1]), 4)
        assert k == 3 and Pt == UniPoly([2, 1])
        assert lemma_puiseux_check(UniPoly([0, 1, 1]), 2) is None

    def test_cusp_edge(self):
        P0 = edge_polynomial(parse_poly("x^2 - y^3"), FracSeries.zero(), F(3, 2)).poly
        assert lemma_puiseux_check(P0, 2) is not None


class TestRootHorn:
    def test_examples(self):
        r = root_horn_test(parse_poly("x*(x^3 - y^5)"), Horn(FracSeries.zero(), F(5, 3)))
        assert r and r.height == F(5, 3) and r.multiplicity == 4
        r = root_horn_test(parse_poly("x^2 - y^3"), Horn(FracSeries.zero(), F(3, 2)))
        assert r and r.multiplicity == 2
        for xi in (F(3, 2), F(2), F(7)):
            assert not root_horn_test(parse_poly("x^2"), Horn(FracSeries.zero(), xi))

    def test_between(self):
        assert not root_horn_test(parse_poly("x*(x^3 - y^5)"), Horn(FracSeries.zero(), F(3, 2)))


def leaf_heights(bar):
    return [b for b in bar.walk() if not b.trunks]


class TestRealTree:
    def test_cusp(self):
        T = build_real_tree(parse_poly("x^2 - y^3"))
        up, low = T.directions
        assert (up.half, low.half) == (1, -1)
        assert up.bar.height == F(3, 2) and up.bar.zero_marked
        assert [t.position for t in up.bar.trunks] == ["L", "R"]
        assert low.bar.height == F(3, 2) and low.bar.trunks == ()
        assert T.signs == (1, 1)

    def test_first_pair(self):
        T = build_real_tree(parse_poly("x*(x^3 - y^5)"))
        b = T.directions[0].bar
        assert b.height == F(5, 3) and b.multiplicity == 4 and b.zero_marked
        assert [t.position for t in b.trunks] == ["0", "R"]
        Tg = build_real_tree(parse_poly("x*(x^3 + y^5)"))
        assert [t.position for t in Tg.directions[0].bar.trunks] == ["L", "0"]

    def test_normal_crossing(self):
        T = build_real_tree(parse_poly("x*y"))
        assert len(T.directions) == 4
        assert all(d.bar.infinite for d in T.directions)

    def test_no_directions(self):
        T = build_real_tree(parse_poly("x^2 + y^2"))
        assert T.directions == () and T.global_sign == 1
        assert build_real_tree(parse_poly("-x^2 - 2*y^2")).global_sign == -1

    def test_json_shape(self):
        j = build_real_tree(parse_poly("x^2 - y^3")).to_json()
        sub = j["ground"][0]["subtree"]
        assert sub["bar"]["h"] == "3/2" and sub["bar"]["zero"] is True
        assert [t["pos"] for t in sub["bar"]["trunks"]] == ["L", "R"]
        assert j["ground"][0]["sector_sign"] == "+"

    def test_render(self):
        text = render_tree(build_real_tree(parse_poly("x^2 - y^3")))
        assert "h=3/2" in text and "h=inf" in text

    @pytest.mark.parametrize("name,f", corpus())
    def test_structure(self, name, f):
        T = build_real_tree(f)
        for b in T.bars():
            if not b.infinite:
                assert sum(t.multiplicity for t in b.trunks) + b.dying == b.multiplicity
            for t in b.trunks:
                ch = t.child
                assert ch.height is None or (b.height is not None and ch.height > b.height)
                if b.zero_marked:
                    assert t.position in ("L", "0", "R")
            if b.infinite:
                assert b.trunks == ()
        for b in T.bars():
            if not b.trunks and b.dying == 0:
                assert b.infinite


class TestCanonicalCode:
    def test_first_pair_modes(self):
        f, g = parse_poly("x*(x^3 - y^5)"), parse_poly("x*(x^3 + y^5)")
        assert g.reflect(-1, 1) == f
        Tf, Tg = build_real_tree(f), build_real_tree(g)
        assert canonical_code(Tf) != canonical_code(Tg)
        assert canonical_code(Tf, "free") == canonical_code(Tg, "free")
        assert not blow_analytic_equivalent(f, g)
        assert blow_analytic_equivalent(f, g, "free")

    def test_rotation(self):
        # rotating the plane by a half turn is orientation preserving
        f = parse_poly("x*(x^3 - y^5)*(x^2 - y^3)")
        assert blow_analytic_equivalent(f, f.reflect(-1, -1))

    def test_reflexive(self):
        for _, f in corpus():
            assert blow_analytic_equivalent(f, f)
            assert blow_analytic_equivalent(f, f, "free")

    def test_second_third_pairs(self):
        for a, b in (("ex52-f", "ex52-g"), ("ex53-f", "ex53-g")):
            f, g = FIXTURES[a].poly(), FIXTURES[b].poly()
            for mode in ("orientation-preserving", "free"):
                assert not blow_analytic_equivalent(f, g, mode)
        g100 = parse_poly("x*(x^3 + y^5)*(x^3 - y^7)*(x^6 + 100*y^10)")
        assert not blow_analytic_equivalent(FIXTURES["ex53-f"].poly(), g100)

    def test_shear_invariance(self):
        rng = random.Random(3)
        for name, f in corpus():
            p = UniPoly([0] + [rng.choice([-1, 1, 2]) for _ in range(3)])
            g = f.x_shear(p)
            assert canonical_code(build_real_tree(f)) == canonical_code(build_real_tree(g)), name

    def test_distinguishes(self):
        codes = {canonical_code(build_real_tree(f), "free") for _, f in corpus()}
        assert len(codes) >= 10


class TestShearPairs:
    def test_characteristic_pairs(self):
        for name, f in corpus():
            c, g = mini_regularize(f)
            p = UniPoly([0, 0, 1, -1])
            h = g.x_shear(UniPoly([-c_ for c_ in p.coeffs]))
            for r in puiseux_roots(g):
                if not r.real:
                    continue
                img = image_branch(XShear(p), r.branch, 6)
                a = characteristic_data(r.branch)
                b = characteristic_data(img)
                assert (a.pairs, a.coeff_signs) == (b.pairs, b.coeff_signs), name
            assert len([r for r in puiseux_roots(h) if r.real]) == len([r for r in puiseux_roots(g) if r.real])
