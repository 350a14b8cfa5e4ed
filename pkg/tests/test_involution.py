from __future__ import annotations

import pytest

from cubicalforms.coeffring import Poly, parse_poly
from cubicalforms.errors import NonUnitU, NotSymmetric
from cubicalforms.involution import (PONTRYAGIN_CVARS, IsoParams, Q_closed_form, Q_series, Q_tau_identity,
                                     coordinate_change_g, g_minus_inverse_mod2, gamma13_g,
                                     pontryagin_class_generator, pontryagin_root_invariance,
                                     pontryagin_series, q_product, torus_restriction,
                                     twisted_compose_check)
from cubicalforms.series import TSeries, parse_series
from cubicalforms.weierstrass import CURVE_VARS, WeierstrassCurve

X = ("x",)
G13 = WeierstrassCurve.gamma13()
ADD = WeierstrassCurve.additive()


def P(text):
    return parse_poly(text, CURVE_VARS)


def x_var(order=None):
    x = TSeries.var(X, CURVE_VARS, "x")
    return x if order is None else x.with_order(order)


def test_identity_change():
    assert coordinate_change_g(G13, IsoParams.identity(), 8) == x_var(8)


def test_pure_scaling():
    g = coordinate_change_g(ADD, IsoParams(3, 0, 0, 0), 6)
    assert g == parse_series("1/3*x + O(6)", X, CURVE_VARS)


def test_non_unit_u():
    with pytest.raises(NonUnitU):
        IsoParams(0, 0, 0, 0)
    with pytest.raises(NonUnitU):
        IsoParams(P("a1"), 0, 0, 0)


def test_gamma13_g_leading_terms():
    g = gamma13_g(6)
    assert g.coefficient((1,)) == P("1")
    assert g.coefficient((2,)) == P("-a1")
    assert g.coefficient((3,)) == P("a1^2")
    assert g.coefficient((0,)) == P("0")


def test_gamma13_g_is_displayed_quotient():
    g = gamma13_g(8)
    assert (g * Q_closed_form(8)).agrees_with(x_var(), 8)


def test_gamma13_g_trivial_curve():
    g = coordinate_change_g(ADD, IsoParams(1, 0, 0, 0), 8)
    assert g == x_var(8)


def test_twisted_composition_is_identity():
    res = twisted_compose_check(10)
    assert res["twisted_is_identity"]
    assert res["plain_mod2_is_identity"]
    assert not res["plain_is_identity"]


def test_plain_composition_leading_defect():
    plain = twisted_compose_check(4)["plain"]
    assert plain == parse_series("x - 2*a1*x^2 + 4*a1^2*x^3 + O(4)", X, CURVE_VARS)


def test_g_agrees_with_inverse_mod_2():
    assert g_minus_inverse_mod2(8).is_zero()


def test_Q_series_closed_form():
    expected = parse_series("1 + a1*x + a3*x^3 - a1*a3*x^4 + O(5)", X, CURVE_VARS)
    assert Q_series(5) == expected


def test_Q_tau_identity():
    assert Q_tau_identity(10).agrees_with(TSeries.one(X, CURVE_VARS))


def test_torus_restriction_q_product_mod_2():
    s = q_product(3, 8)
    assert torus_restriction(1, s, 8).reduce_mod(2).agrees_with(TSeries.one(("x1",), CURVE_VARS))


def test_torus_restriction_sum():
    ys = ("y1", "y2", "y3")
    s = sum((TSeries.var(ys, CURVE_VARS, y) for y in ys), TSeries.zero(ys, CURVE_VARS))
    out = torus_restriction(1, s, 7)
    x1 = TSeries.var(("x1",), CURVE_VARS, "x1")
    assert out == (x1 + gamma13_g(7).rename({"x": "x1"}, ("x1",))).with_order(7)


def test_torus_restriction_product_vanishes():
    ys = ("y1", "y2", "y3")
    y1, y2, y3 = (TSeries.var(ys, CURVE_VARS, y) for y in ys)
    assert torus_restriction(1, y1 * y2 * y3, 7).is_zero()


def test_torus_restriction_requires_symmetry():
    ys = ("y1", "y2", "y3")
    with pytest.raises(NotSymmetric):
        torus_restriction(1, TSeries.var(ys, CURVE_VARS, "y1"), 5)


def test_pontryagin_additive():
    s = pontryagin_series(1, 6, curve=ADD)
    expected = parse_series("1 + t*x1^2 + O(6)", ("x1",), PONTRYAGIN_CVARS)
    assert s == expected


def test_pontryagin_root_leading_terms():
    # x * iota(x) with iota(x) = -x + a1 x^2 + ...
    c = pontryagin_class_generator(5)
    assert c.coefficient((2,)) == P("-1")
    assert c.coefficient((3,)) == P("a1")


def test_pontryagin_root_invariance():
    assert pontryagin_root_invariance(8).is_zero()


def test_pontryagin_rank_two_is_product():
    s = pontryagin_series(2, 6)
    one = pontryagin_series(1, 6)
    x2 = one.rename({"x1": "x2"}, ("x1", "x2"))
    assert s == (one.rename({}, ("x1", "x2")) * x2).with_order(6)


def test_pontryagin_t_order():
    s = pontryagin_series(2, 8, t_order=2)
    ti = PONTRYAGIN_CVARS.index("t")
    for cd in s.terms.values():
        assert all(k[ti] < 2 for k in cd)
