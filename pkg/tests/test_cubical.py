from __future__ import annotations

from itertools import permutations

from cubicalforms.coeffring import Poly, parse_poly
from cubicalforms.cubical import (MOD_2A1A2, SVARS, appendix_b_pipeline, cubical_structure, t_fraction,
                                  u_fraction)
from cubicalforms.series import TSeries
from cubicalforms.weierstrass import CURVE_VARS, WeierstrassCurve

GEN = WeierstrassCurve.general()
G13 = WeierstrassCurve.gamma13()
ADD = WeierstrassCurve.additive()


def P(text):
    return parse_poly(text, CURVE_VARS)


def xs():
    return [TSeries.var(SVARS, CURVE_VARS, v) for v in SVARS]


def test_general_coefficients():
    r = cubical_structure(GEN, 5)
    assert r.coefficient((0, 0, 0)) == P("1")
    assert r.coefficient((1, 1, 1)) == -(P("a1*a2") - 3 * P("a3"))
    for e in ((2, 1, 1), (1, 2, 1), (1, 1, 2)):
        assert r.coefficient(e) == -(P("a1*a3") - P("a2^2") + 5 * P("a4"))


def test_additive_curve_gives_one():
    assert cubical_structure(ADD, 6) == TSeries.one(SVARS, CURVE_VARS, 6)


def test_gamma13_mod_2():
    r = cubical_structure(G13, 4, mod=MOD_2A1A2)
    assert str(r) == "1 + a3*x0*x1*x2 + O(4)"


def test_general_reduces_to_gamma13():
    general = cubical_structure(GEN, 6).reduce_mod(2, ("a1", "a2", "a4", "a6"))
    special = cubical_structure(G13, 6).reduce_mod(2, ("a1", "a2"))
    assert general == special


def test_low_coefficients_reduce_mod_2_a1_a2():
    # the x0 x1 x2 coefficient reduces to a3 without killing a4 or a6
    general = cubical_structure(GEN, 4).reduce_mod(*MOD_2A1A2)
    special = cubical_structure(G13, 4, mod=MOD_2A1A2)
    assert general == special


def test_symmetric_group_invariance():
    r = cubical_structure(GEN, 6)
    for p in permutations(range(3)):
        assert r.permute(p) == r


def test_normalization():
    r = cubical_structure(GEN, 6)
    one = TSeries.one(SVARS, CURVE_VARS, 6)
    for v in SVARS:
        assert r.set_zero(v) == one


def test_nonconstant_terms_divisible_by_x0x1x2():
    r = cubical_structure(GEN, 6)
    for e in r.terms:
        if sum(e):
            assert min(e) >= 1, e


def test_t_fraction_additive_numerator():
    t = t_fraction(ADD, 14)
    x0, x1, x2 = xs()
    f = lambda p, q: p * q ** 3 - q * p ** 3
    expected = f(x0, x1) * f(x1, x2) * f(x2, x0)
    assert t.numerator.agrees_with(expected, 14)
    assert t.numerator_valuation == 12


def test_t_fraction_antisymmetry():
    t = t_fraction(GEN, 16)
    swap = (1, 0, 2)
    assert t.numerator.permute(swap) == -t.numerator
    assert t.denominator.permute(swap) == -t.denominator


def test_u_fraction_additive():
    u = u_fraction(ADD, 7)
    x0, x1, x2 = xs()
    assert u.numerator.agrees_with((x0 + x1) * (x1 + x2) * (x2 + x0), 7)
    assert u.denominator.agrees_with(x0 * x1 * x2 * (x0 + x1 + x2), 7)


def test_u_fraction_symmetric():
    u = u_fraction(GEN, 7)
    for p in permutations(range(3)):
        assert u.numerator.permute(p) == u.numerator
        assert u.denominator.permute(p) == u.denominator


def test_u_fraction_mod_2_factor():
    u = u_fraction(G13, 8)
    x0, x1, x2 = xs()
    a3 = TSeries.const(SVARS, CURVE_VARS, P("a3"))
    f = lambda p, q: p + q + a3 * p ** 2 * q ** 2
    expected = (f(x0, x1) * f(x1, x2) * f(x2, x0)).reduce_mod(*MOD_2A1A2)
    assert u.numerator.reduce_mod(*MOD_2A1A2).agrees_with(expected, 8)


def test_appendix_b_pipeline():
    report = appendix_b_pipeline(4)
    assert all(ok for _, ok in report["checks"])
    assert len(report["checks"]) >= 10
    assert report["r_U"] == "1 + a3*x0*x1*x2 + O(4)"
