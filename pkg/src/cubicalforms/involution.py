"""Coordinate changes of Weierstrass curves and the Gamma_1(3) involution.

An isomorphism ``X' = u^2 X + r Z``, ``Y' = s u^2 X + u^3 Y + t Z``,
``Z' = Z`` changes the formal coordinate by

    x' = (x/u + r z/u^3) / (1 + t z/u^3 + s x/u) = g(x).

For the Gamma_1(3) curve the involution sending the point of order 3 to its
negative is ``(u, r, s, t) = (1, 0, a1, a3)``, i.e. ``g(x) = x/(1 + a1 x + a3 z(x))``,
and it lands on the curve with ``a1, a3`` negated.  Identities that compose
``g`` with itself therefore come in two readings: *twisted* (the second
application uses the negated parameters; exact) and *plain* (same
parameters; only true mod 2).
"""
from __future__ import annotations

from dataclasses import dataclass
from .coeffring import Poly, scalar_arith
from .errors import InternalMismatch, NonUnitU, NotSymmetric
from .series import TSeries, graded_divide
from .weierstrass import CURVE_VARS, WeierstrassCurve, formal_inverse, z_series

__all__ = [
    "IsoParams", "coordinate_change_g", "gamma13_g", "twisted_compose_check", "Q_series",
    "Q_tau_series", "Q_closed_form", "torus_restriction", "q_product", "pontryagin_series",
    "pontryagin_class_generator", "PONTRYAGIN_CVARS", "Q_tau_identity", "g_minus_inverse_mod2",
    "pontryagin_root_invariance",
]

PONTRYAGIN_CVARS = CURVE_VARS + ("t",)


def _as_poly(v):
    return v if isinstance(v, Poly) else Poly.const(CURVE_VARS, v)


@dataclass(frozen=True)
class IsoParams:
    u: Poly
    r: Poly
    s: Poly
    t: Poly

    def __post_init__(self):
        for name in ("u", "r", "s", "t"):
            object.__setattr__(self, name, _as_poly(getattr(self, name)))
        if not self.u.is_constant() or not self.u:
            raise NonUnitU(f"u = {self.u} is not a unit")

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 0)

    @classmethod
    def gamma13_involution(cls, sign=1):
        a1, a3 = Poly.var(CURVE_VARS, "a1"), Poly.var(CURVE_VARS, "a3")
        return cls(1, 0, sign * a1, sign * a3)


def coordinate_change_g(curve, params, order):
    """The series g(x) = x' of the isomorphism ``params`` on ``curve``."""
    sv = ("x",)
    u_inv = scalar_arith("inv", params.u.constant_term())
    x = TSeries.var(sv, CURVE_VARS, "x")
    z = z_series(curve, max(order, 3))

    def c(p):
        return TSeries.const(sv, CURVE_VARS, p)

    num = x.scale(u_inv) + c(params.r * u_inv ** 3) * z
    den = 1 + c(params.t * u_inv ** 3) * z + c(params.s * u_inv) * x
    g = (num * den.with_order(order).invert_unit()).with_order(order)
    return g


def gamma13_g(order, negated=False):
    """g(x) = x / (1 + a1 x + a3 z(x)) on the Gamma_1(3) curve.

    With ``negated`` the same construction on the curve with a1, a3 negated,
    i.e. ``x / (1 - a1 x - a3 z^-(x))``.
    """
    curve = WeierstrassCurve.gamma13()
    if negated:
        return coordinate_change_g(curve.twisted(), IsoParams.gamma13_involution(-1), order)
    return coordinate_change_g(curve, IsoParams.gamma13_involution(), order)


def _compose(outer, inner):
    return outer.substitute({"x": inner}, ("x",))


def twisted_compose_check(order):
    """Compare g^-(g(x)) and g(g(x)) with x.

    Returns a dict with the twisted composition (expected to equal x
    exactly), the plain composition, and its mod-2 reduction.
    """
    g = gamma13_g(order)
    g_neg = gamma13_g(order, negated=True)
    x = TSeries.var(("x",), CURVE_VARS, "x").with_order(order)
    twisted = _compose(g_neg, g)
    plain = _compose(g, g)
    plain_mod2 = plain.reduce_mod(2)
    return {
        "order": order,
        "twisted": twisted,
        "twisted_is_identity": twisted.agrees_with(x),
        "plain": plain,
        "plain_is_identity": plain.agrees_with(x),
        "plain_mod2": plain_mod2,
        "plain_mod2_is_identity": plain_mod2.agrees_with(x),
    }


def Q_series(order):
    """Q(x) = x/g(x), checked against the closed form 1 + a1 x + a3 z(x)."""
    sv = ("x",)
    g = gamma13_g(order + 1)
    x = TSeries.var(sv, CURVE_VARS, "x").with_order(order + 1)
    quotient = graded_divide(x, g).with_order(order)
    closed = Q_closed_form(order)
    if not quotient.agrees_with(closed):
        raise InternalMismatch(f"x/g(x) = {quotient} but 1 + a1 x + a3 z = {closed}")
    return closed


def Q_closed_form(order, negated=False):
    sv = ("x",)
    curve = WeierstrassCurve.gamma13()
    if negated:
        curve = curve.twisted()
    x = TSeries.var(sv, CURVE_VARS, "x")
    z = z_series(curve, max(order, 3)).with_order(order)
    return (1 + TSeries.const(sv, CURVE_VARS, curve.a1) * x
            + TSeries.const(sv, CURVE_VARS, curve.a3) * z).with_order(order)


def Q_tau_series(order):
    """Q with a1, a3 negated: 1 - a1 x - a3 z^-(x)."""
    return Q_closed_form(order, negated=True)


def q_product(n_vars, order):
    """prod_{k=1}^{n} Q(y_k) in the variables y1..yn."""
    svars = tuple(f"y{k}" for k in range(1, n_vars + 1))
    q = Q_series(order)
    result = TSeries.one(svars, CURVE_VARS, order)
    for v in svars:
        result = result * q.rename({"x": v}, svars)
    return result.with_order(order)


def _check_symmetric(s):
    n = len(s.svars)
    generators = []
    if n >= 2:
        generators.append((1, 0) + tuple(range(2, n)))
        generators.append(tuple(range(1, n)) + (0,))
    for perm in generators:
        if s.permute(perm) != s:
            raise NotSymmetric(f"series is not invariant under the permutation {perm}")


def torus_restriction(m, s, order, g=None):
    """Restrict a symmetric series in y1..y_{2m+1} to the torus x1..xm.

    ``y_{2k-1} -> x_k``, ``y_{2k} -> g(x_k)`` and ``y_{2m+1} -> 0``, where
    ``g`` defaults to the Gamma_1(3) involution series.
    """
    if len(s.svars) != 2 * m + 1:
        raise ValueError(f"expected {2 * m + 1} series variables, got {len(s.svars)}")
    _check_symmetric(s)
    if g is None:
        g = gamma13_g(order)
    target = tuple(f"x{k}" for k in range(1, m + 1))
    assignments = {}
    for k in range(1, m + 1):
        xk = f"x{k}"
        assignments[s.svars[2 * k - 2]] = TSeries.var(target, s.cvars, xk)
        assignments[s.svars[2 * k - 1]] = g.rename({"x": xk}, target)
    assignments[s.svars[2 * m]] = TSeries.zero(target, s.cvars)
    return s.substitute(assignments, target).with_order(order)


def pontryagin_series(m, order, t_order=None, curve=None):
    """prod_{k=1}^{m} (1 - t * x_k * iota(x_k)) with ``t`` a coefficient variable.

    The coefficient of ``t^i`` is the i-th Pontryagin class restricted to the
    maximal torus.  Powers of ``t`` at or above ``t_order`` are dropped.
    """
    curve = curve or WeierstrassCurve.gamma13()
    svars = tuple(f"x{k}" for k in range(1, m + 1))
    iota = formal_inverse(curve, order).with_cvars(PONTRYAGIN_CVARS)
    t = TSeries.const(svars, PONTRYAGIN_CVARS, Poly.var(PONTRYAGIN_CVARS, "t"))
    result = TSeries.one(svars, PONTRYAGIN_CVARS, order)
    for v in svars:
        xv = TSeries.var(svars, PONTRYAGIN_CVARS, v)
        ck = xv * iota.rename({"x": v}, svars)
        result = result * (1 - t * ck)
    result = result.with_order(order)
    if t_order is not None:
        ti = PONTRYAGIN_CVARS.index("t")
        result = result.map_coefficients(
            lambda p: Poly(p.variables, {e: c for e, c in p.terms.items() if e[ti] < t_order}))
    return result


def pontryagin_class_generator(order, curve=None):
    """c(x) = x * iota(x), the torus-level Pontryagin root."""
    curve = curve or WeierstrassCurve.gamma13()
    iota = formal_inverse(curve, order)
    x = TSeries.var(("x",), CURVE_VARS, "x")
    return (x * iota).with_order(order)




def Q_tau_identity(order):
    """Q(x) * Q^tau(g(x)), which equals 1 exactly."""
    sv = ("x",)
    g = gamma13_g(order)
    composed = Q_tau_series(order).substitute({"x": g}, sv)
    return (Q_series(order) * composed).with_order(order)


def g_minus_inverse_mod2(order):
    """g(x) - iota(x) reduced mod 2 (zero: g agrees with [-1] mod 2)."""
    curve = WeierstrassCurve.gamma13()
    return (gamma13_g(order) - formal_inverse(curve, order)).reduce_mod(2)


def pontryagin_root_invariance(order):
    """c(iota(x)) - c(x) for c(x) = x iota(x); vanishes identically."""
    c = pontryagin_class_generator(order)
    iota = formal_inverse(WeierstrassCurve.gamma13(), order)
    return (c.substitute({"x": iota}, ("x",)) - c).with_order(order)
