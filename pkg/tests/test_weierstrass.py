from __future__ import annotations

from cubicalforms.coeffring import Poly
from cubicalforms.series import TSeries, parse_series
from cubicalforms.weierstrass import (CURVE_VARS, WeierstrassCurve, discriminant, fgl, formal_inverse,
                                      n_series, point_negation, z_series)

X = ("x",)
XX = ("x0", "x1")
GEN = WeierstrassCurve.general()
G13 = WeierstrassCurve.gamma13()
ADD = WeierstrassCurve.additive()
a1, a2, a3, a4, a6 = Poly.gens(CURVE_VARS)


def ps(text, sv=X):
    return parse_series(text, sv, CURVE_VARS)


def test_z_series_general():
    expected = ps("x^3 - a1*x^4 + a1^2*x^5 + a2*x^5 - a1^3*x^6 - 2*a1*a2*x^6 - a3*x^6 + O(7)")
    assert z_series(GEN, 7) == expected


def test_z_series_gamma13_mod_2():
    assert str(z_series(G13, 7).reduce_mod(2, ("a1", "a2"))) == "x^3 + a3*x^6 + O(7)"


def test_z_series_additive():
    assert z_series(ADD, 9) == TSeries.var(X, CURVE_VARS, "x") ** 3 + TSeries.zero(X, CURVE_VARS, 9)


def test_z_series_satisfies_curve_equation():
    order = 10
    z = z_series(GEN, order)
    x = TSeries.var(X, CURVE_VARS, "x")
    c = lambda p: TSeries.const(X, CURVE_VARS, p)
    lhs = z + c(a1) * x * z + c(a3) * z * z
    rhs = x ** 3 + c(a2) * x ** 2 * z + c(a4) * x * z * z + c(a6) * z ** 3
    assert (lhs - rhs).with_order(order).is_zero()


def test_fgl_general_order4():
    expected = ps("x0 + x1 + a1*x0*x1 - a2*x0^2*x1 - a2*x0*x1^2 + O(4)", XX)
    assert fgl(GEN, 4) == expected


def test_fgl_gamma13_mod_2():
    assert str(fgl(G13, 5).reduce_mod(2, ("a1", "a2"))) == "x0 + x1 + a3*x0^2*x1^2 + O(5)"


def test_fgl_additive():
    assert fgl(ADD, 6) == ps("x0 + x1 + O(6)", XX)


def test_fgl_commutative():
    law = fgl(GEN, 7)
    assert law.rename({"x0": "x1", "x1": "x0"}, XX) == law


def test_fgl_unit():
    law = fgl(GEN, 7)
    assert law.set_zero("x1").agrees_with(TSeries.var(XX, CURVE_VARS, "x0"))


def test_fgl_associative_gamma13():
    order = 7
    law = fgl(G13, order)
    sv = ("x0", "x1", "x2")
    x = {v: TSeries.var(sv, CURVE_VARS, v) for v in sv}
    inner_l = law.substitute({"x0": x["x0"], "x1": x["x1"]}, sv)
    inner_r = law.substitute({"x0": x["x1"], "x1": x["x2"]}, sv)
    left = law.substitute({"x0": inner_l, "x1": x["x2"]}, sv)
    right = law.substitute({"x0": x["x0"], "x1": inner_r}, sv)
    assert left.agrees_with(right, order)


def test_formal_inverse_additive():
    assert formal_inverse(ADD, 6) == ps("-x + O(6)")


def test_formal_inverse_defining_identity():
    iota = formal_inverse(G13, 8)
    x = TSeries.var(X, CURVE_VARS, "x")
    f = fgl(G13, 8).substitute({"x0": x, "x1": iota}, X)
    assert f.with_order(8).is_zero()


def test_formal_inverse_degree_two():
    iota = formal_inverse(GEN, 6)
    assert iota.coefficient((1,)) == Poly.const(CURVE_VARS, -1)
    assert iota.coefficient((2,)) == a1


def test_formal_inverse_is_involution():
    iota = formal_inverse(GEN, 7)
    assert iota.substitute({"x": iota}, X).agrees_with(TSeries.var(X, CURVE_VARS, "x"), 7)


def test_formal_inverse_matches_point_negation():
    assert formal_inverse(GEN, 8).agrees_with(point_negation(GEN, 8))


def test_n_series():
    x = TSeries.var(X, CURVE_VARS, "x")
    assert n_series(GEN, 1, 6).agrees_with(x)
    assert n_series(GEN, -1, 6) == formal_inverse(GEN, 6).substitute({"x": x.with_order(6)}, X)
    assert n_series(ADD, 2, 6).agrees_with(2 * x)
    assert n_series(GEN, 0, 6).is_zero()


def test_n_series_two():
    # F(x, x) = 2x + a1 x^2 + ...
    two = n_series(GEN, 2, 5)
    assert two.coefficient((1,)) == Poly.const(CURVE_VARS, 2)
    assert two.coefficient((2,)) == a1
    assert two.reduce_mod(2, ("a1",)).coefficient((1,)) == Poly.zero(CURVE_VARS)


def test_discriminant():
    assert discriminant(a1, a3) == a1 ** 3 * a3 ** 3 - 27 * a3 ** 4
    assert not discriminant(a1, Poly.zero(CURVE_VARS))
    one = Poly.const(CURVE_VARS, 1)
    assert discriminant(Poly.zero(CURVE_VARS), one) == Poly.const(CURVE_VARS, -27)
