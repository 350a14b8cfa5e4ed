"""Formal-group series of a Weierstrass curve in the coordinate x = X/Y.

The curve ``Y^2 Z + a1 XYZ + a3 YZ^2 = X^3 + a2 X^2 Z + a4 XZ^2 + a6 Z^3``
is studied in the affine chart ``Y = 1`` with ``x = X/Y`` and ``z = Z/Y``,
where the equation reads

    z + a1*x*z + a3*z^2 = x^3 + a2*x^2*z + a4*x*z^2 + a6*z^3.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .coeffring import Poly
from .series import TSeries, divided_difference

__all__ = [
    "CURVE_VARS", "WeierstrassCurve", "z_series", "fgl", "formal_inverse", "n_series",
    "discriminant", "point_negation",
]

CURVE_VARS = ("a1", "a2", "a3", "a4", "a6")


def _gen(name):
    return Poly.var(CURVE_VARS, name)


@dataclass(frozen=True)
class WeierstrassCurve:
    a1: Poly
    a2: Poly
    a3: Poly
    a4: Poly
    a6: Poly
    specializations: tuple = field(default=(), compare=False)

    @classmethod
    def general(cls):
        """All five coefficients symbolic."""
        return cls(*(_gen(v) for v in CURVE_VARS))

    @classmethod
    def gamma13(cls):
        """The Gamma_1(3) curve y^2 + a1 xy + a3 y = x^3 (a2 = a4 = a6 = 0)."""
        zero = Poly.zero(CURVE_VARS)
        return cls(_gen("a1"), zero, _gen("a3"), zero, zero,
                   specializations=(("a2", 0), ("a4", 0), ("a6", 0)))

    @classmethod
    def additive(cls):
        zero = Poly.zero(CURVE_VARS)
        return cls(zero, zero, zero, zero, zero,
                   specializations=tuple((v, 0) for v in CURVE_VARS))

    def specialize(self, **values):
        """Substitute values for the coefficient variables in every a_i."""
        vals = {k: v for k, v in values.items()}
        coeffs = [getattr(self, v).subs(vals) for v in CURVE_VARS]
        return WeierstrassCurve(*coeffs, specializations=self.specializations + tuple(sorted(vals.items())))

    def twisted(self):
        """Apply a1 -> -a1, a3 -> -a3 (and fix a2, a4, a6) to every coefficient."""
        flip = {"a1": -_gen("a1"), "a3": -_gen("a3")}
        return WeierstrassCurve(*(getattr(self, v).subs(flip) for v in CURVE_VARS),
                                specializations=self.specializations)

    @property
    def coefficients(self):
        return {v: getattr(self, v) for v in CURVE_VARS}

    def is_gamma13(self):
        return not (self.a2 or self.a4 or self.a6)


def _c(svars, poly):
    return TSeries.const(svars, CURVE_VARS, poly)


@lru_cache(maxsize=None)
def z_series(curve, order):
    """z(x) solving the chart equation, ``z = x^3 - a1 x^4 + ...``, to ``order``.

    Fixed-point iteration ``z <- x^3 + a2 x^2 z + a4 x z^2 + a6 z^3 - a1 x z - a3 z^2``;
    every pass fixes one more degree, so ``order + 1`` passes suffice.
    """
    if order < 3:
        raise ValueError("z_series needs order >= 3")
    sv = ("x",)
    x = TSeries.var(sv, CURVE_VARS, "x")
    x2, x3 = x * x, x * x * x
    z = TSeries.zero(sv, CURVE_VARS, order)
    for _ in range(order + 1):
        zz = z.mul(z, order=order)
        new = x3.with_order(order)
        if curve.a2:
            new = new + _c(sv, curve.a2).mul(x2.mul(z, order=order), order=order)
        if curve.a4:
            new = new + _c(sv, curve.a4).mul(x.mul(zz, order=order), order=order)
        if curve.a6:
            new = new + _c(sv, curve.a6).mul(zz.mul(z, order=order), order=order)
        if curve.a1:
            new = new - _c(sv, curve.a1).mul(x.mul(z, order=order), order=order)
        if curve.a3:
            new = new - _c(sv, curve.a3).mul(zz, order=order)
        z = new.with_order(order)
    return z


@lru_cache(maxsize=None)
def fgl(curve, order):
    """Formal group law ``x0 +_F x1`` to total degree ``< order`` (chord construction).

    The line through ``(x0, z0)`` and ``(x1, z1)`` is ``z = lam*x + nu``;
    substituting into the chart equation gives a cubic in ``x`` with leading
    coefficient ``A`` and quadratic coefficient ``B``, so the third
    intersection has ``x3 = -B/A - x0 - x1``.  The sum is the negative of
    that point, whose coordinate is ``-x3 / (1 + a1 x3 + a3 z3)``.
    """
    if order < 2:
        raise ValueError("fgl needs order >= 2")
    m = order + 2
    sv = ("x0", "x1")
    z = z_series(curve, m)
    lam = divided_difference(z, "x0", "x1")
    x0 = TSeries.var(sv, CURVE_VARS, "x0")
    x1 = TSeries.var(sv, CURVE_VARS, "x1")
    z0 = z.rename({"x": "x0"}, sv)
    nu = z0 - lam * x0
    lam2 = lam * lam
    lam3 = lam2 * lam
    one = TSeries.one(sv, CURVE_VARS)
    A = one
    B = TSeries.zero(sv, CURVE_VARS)
    if curve.a2:
        A = A + _c(sv, curve.a2) * lam
        B = B + _c(sv, curve.a2) * nu
    if curve.a4:
        A = A + _c(sv, curve.a4) * lam2
        B = B + _c(sv, 2 * curve.a4) * lam * nu
    if curve.a6:
        A = A + _c(sv, curve.a6) * lam3
        B = B + _c(sv, 3 * curve.a6) * lam2 * nu
    if curve.a1:
        B = B - _c(sv, curve.a1) * lam
    if curve.a3:
        B = B - _c(sv, curve.a3) * lam2
    # exact inputs (e.g. the additive curve) still need a finite working order
    A = A.with_order(min(lam.order, m))
    x3 = -(B * A.invert_unit()) - x0 - x1
    z3 = lam * x3 + nu
    denom = one
    if curve.a1:
        denom = denom + _c(sv, curve.a1) * x3
    if curve.a3:
        denom = denom + _c(sv, curve.a3) * z3
    denom = denom.with_order(min(x3.order, m))
    result = -(x3 * denom.invert_unit())
    return result.truncate(order)


@lru_cache(maxsize=None)
def formal_inverse(curve, order):
    """The series iota(x) with ``F(x, iota(x)) = 0``.

    Iterates ``iota <- -x - (F(x, iota) - x - iota)`` from ``iota = -x``.
    """
    sv = ("x",)
    law = fgl(curve, order)
    x = TSeries.var(sv, CURVE_VARS, "x")
    iota = (-x).with_order(order)
    for _ in range(order + 1):
        f = law.substitute({"x0": x, "x1": iota}, sv)
        iota = (-x - (f - x - iota)).with_order(order)
    return iota


def n_series(curve, n, order):
    """The multiplication-by-n series [n](x)."""
    sv = ("x",)
    x = TSeries.var(sv, CURVE_VARS, "x")
    if n == 0:
        return TSeries.zero(sv, CURVE_VARS, order)
    if n < 0:
        return formal_inverse(curve, order).substitute({"x": n_series(curve, -n, order)}, sv)
    law = fgl(curve, order)
    result = x.with_order(order)
    for _ in range(n - 1):
        result = law.substitute({"x0": x, "x1": result}, sv)
    return result


def point_negation(curve, order):
    """Coordinate of the negated point, ``-x / (1 + a1 x + a3 z(x))``.

    Closed form of the formal inverse; used as an independent cross-check.
    """
    sv = ("x",)
    x = TSeries.var(sv, CURVE_VARS, "x")
    z = z_series(curve, max(order, 3))
    denom = (TSeries.one(sv, CURVE_VARS) + _c(sv, curve.a1) * x + _c(sv, curve.a3) * z).with_order(order)
    return (-(x * denom.invert_unit())).with_order(order)


def discriminant(a1, a3):
    """Discriminant a3^3 (a1^3 - 27 a3) of the Gamma_1(3) curve."""
    return a3 ** 3 * (a1 ** 3 - 27 * a3)
