"""Sparse polynomials: parsing, coordinate moves, gcd, resultants."""

import pytest

from planecurves.errors import NotSuitable, ZeroPolynomial
from planecurves.fields import UniPoly, join_fields
from planecurves.poly import (
    AFFINE,
    PROJECTIVE,
    CoordChange,
    MultiPoly,
    biv_gcd,
    dehomogenize,
    homogenize,
    is_suitable,
    make_suitable,
    make_suitable_many,
    parse_poly,
    resultant_biv,
    squarefree_defect,
    translate,
)

from .helpers import F2, F3, F5, QQ, aff, corpus, hom


class TestParsing:
    def test_terms_of_a_simple_curve(self):
        F = aff("y^2 - x^3")
        assert F.terms == {(0, 2): QQ.one(), (3, 0): -QQ.one()}

    def test_adjacency_is_multiplication(self):
        assert aff("2xy") == aff("2*x*y")
        assert aff("y(y-x)(y+x)") == aff("y^3 - x^2*y")

    def test_fraction_coefficients(self):
        F = aff("1/2*x + 3/4")
        assert F.coeff((1, 0)) == QQ.scalar(1) / QQ.scalar(2)

    def test_case_folded_to_target_space(self):
        assert parse_poly("Y^2 - X^3", QQ, space="affine") == aff("y^2-x^3")
        assert parse_poly("x*z - y^2", QQ, space="homogeneous") == hom("X*Z - Y^2")

    def test_auto_space_detection(self):
        assert parse_poly("y^2-x^3", QQ).variables == AFFINE
        assert parse_poly("Y^2*Z-X^3", QQ).variables == PROJECTIVE

    @pytest.mark.parametrize(
        "bad",
        ["y^2 - W", "x + Y", "z^2 + x", "x +", "(x+y", "x^y", "x$y"],
    )
    def test_rejections(self, bad):
        with pytest.raises(ValueError):
            parse_poly(bad, QQ, space="affine")

    def test_str_round_trip_on_corpus(self):
        data = corpus()
        texts = [e["poly"] for e in data["singularities"]]
        texts += [e["F"] for e in data["intersection_pairs"]]
        texts += [e["F"] for e in data["bezout_pairs"]]
        for text in texts:
            space = "homogeneous" if any(c in text for c in "ZX") else "affine"
            F = parse_poly(text, QQ, space=space) if space == "affine" else None
            if F is None:
                F = parse_poly(text, QQ, space="homogeneous")
            G = parse_poly(str(F), QQ, space=space)
            assert G == F, text


class TestArithmetic:
    def test_binomial_square(self):
        x = MultiPoly.var(QQ, "x")
        y = MultiPoly.var(QQ, "y")
        assert (x + y) ** 2 == x ** 2 + 2 * x * y + y ** 2

    def test_product_rule(self):
        F = aff("x^2*y + y^3")
        G = aff("x - y^2")
        lhs = (F * G).derivative("y")
        rhs = F.derivative("y") * G + F * G.derivative("y")
        assert lhs == rhs

    def test_evaluate_matches_substitute(self):
        F = aff("x^3 - 2*x*y + 5")
        v = F.evaluate({"x": QQ.scalar(2), "y": QQ.scalar(-1)})
        assert v == QQ.scalar(2 ** 3 + 4 + 5)

    def test_field_join_in_mixed_arithmetic(self):
        K = join_fields(F3, F3)
        assert K == F3
        a = aff("x + 1", F3)
        b = aff("x + 2", F3)
        assert (a + b) == aff("2*x", F3)

    def test_mult_at_origin_and_lowest_form(self):
        F = aff("y^2 - x^3 + x^2*y^2")
        assert F.mult_at_origin() == 2
        assert F.lowest_form() == aff("y^2")
        with pytest.raises(ZeroPolynomial):
            MultiPoly.zero(QQ).mult_at_origin()


class TestCoordinateMoves:
    def test_translate_moves_the_point(self):
        F = aff("y^2 - x^3")
        G = translate(F, 1, 1)  # F(x+1, y+1)
        assert G.constant_term() == QQ.zero()  # (1,1) is on the curve
        assert G.evaluate({"x": QQ.scalar(-1), "y": QQ.scalar(-1)}).is_zero()

    def test_homogenize_dehomogenize_round_trip(self):
        F = aff("y^2 - x^3 + 2*x")
        assert dehomogenize(homogenize(F), "Z") == F
        assert homogenize(F).is_homogeneous()

    def test_dehomogenize_other_charts(self):
        F = hom("Y^2*Z - X^3")
        # chart Y: (X, Z) -> (x, y)
        assert dehomogenize(F, "Y") == aff("y - x^3")
        assert dehomogenize(F, "X") == aff("x^2*y - 1")

    def test_coord_change_inverse_round_trip(self):
        F = aff("y^2 - x^3 + x*y")
        change = CoordChange.shear(QQ.scalar(2)).then(CoordChange.translation(1, -1))
        assert change.inverse().apply(change.apply(F)) == F


class TestSuitability:
    def test_pure_y_lowest_form_is_suitable(self):
        assert is_suitable(aff("y^2 - x^3"))
        assert not is_suitable(aff("x^2 - y^3"))

    def test_make_suitable_fixes_it(self):
        G, change = make_suitable(aff("x^2 - y^3"))
        assert is_suitable(G)
        assert change.apply(aff("x^2 - y^3")) == G

    def test_shared_shear_over_f2_extends_the_field(self):
        # forms x, y, x+y kill every lambda in F_2, so the tower must grow
        polys = [aff("x", F2), aff("y", F2), aff("x+y", F2)]
        sheared, _, field = make_suitable_many(polys)
        assert field.order() == 4
        assert all(is_suitable(p) for p in sheared)

    def test_zero_cannot_be_sheared(self):
        with pytest.raises(ZeroPolynomial):
            make_suitable(MultiPoly.zero(QQ))


class TestGcdResultant:
    def test_coprime_pair_has_constant_gcd(self):
        assert biv_gcd(aff("y^2-x^3"), aff("y")).total_degree() == 0

    def test_common_factor_degree(self):
        h = aff("x + y")
        a = aff("y - x^2")
        b = aff("y^2 + x")
        g = biv_gcd(h * a, h * b)
        assert g.total_degree() == h.total_degree()
        assert g.evaluate({"x": QQ.scalar(1), "y": QQ.scalar(-1)}).is_zero()

    def test_resultant_of_tangent_line(self):
        R = resultant_biv(aff("y^2 - x^3"), aff("y"), "y")
        assert isinstance(R, UniPoly)
        assert R.degree == 3
        assert all(R.coeff(k).is_zero() for k in range(3))

    def test_resultant_vanishes_iff_common_factor(self):
        h = aff("y - x")
        R = resultant_biv(h * aff("y + x"), h * aff("y - x^2"), "y")
        assert R.is_zero()

    def test_resultant_in_the_other_variable(self):
        R = resultant_biv(aff("y^2 - x^3"), aff("x"), "x")
        # Res_x(y^2 - x^3, x) = y^2 up to sign
        assert R.degree == 2
        assert R.coeff(0).is_zero() and R.coeff(1).is_zero()


class TestSquarefree:
    @pytest.mark.parametrize("entry", corpus()["not_squarefree"], ids=lambda e: e["poly"])
    def test_corpus_defects_detected(self, entry):
        from .helpers import field_by_name

        F = parse_poly(entry["poly"], field_by_name(entry["field"]), space="affine")
        assert squarefree_defect(F) is not None

    def test_squarefree_curve_has_no_defect(self):
        assert squarefree_defect(aff("y^2 - x^3")) is None
        assert squarefree_defect(aff("(y-x)(y+x)", F5)) is None

    def test_defect_is_the_repeated_part(self):
        d = squarefree_defect(aff("(x+y)^2*(x-y)"))
        assert d.total_degree() == 1
        assert d.evaluate({"x": QQ.scalar(1), "y": QQ.scalar(-1)}).is_zero()

    def test_char_p_pure_power(self):
        # x^3 + y^3 = (x+y)^3 over F_3
        d = squarefree_defect(aff("x^3 + y^3", F3))
        assert d is not None
