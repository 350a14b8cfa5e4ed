"""The cubical structure r_U = t/u of a Weierstrass curve as a power series.

``t`` is the determinant quotient built from the chart functions ``x_i`` and
``z_i = z(x_i)``; ``u`` is built from the formal group law.  Neither is a
power series on its own, so both are kept as :class:`SeriesFraction` and
only the combined quotient is divided out.

Cyclic products use ``f(x0, x1) f(x1, x2) f(x2, x0)``; symmetric sums run
over all six permutations of the indices.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .errors import MismatchAgainstPaper
from .series import TSeries, graded_divide
from .weierstrass import CURVE_VARS, WeierstrassCurve, fgl, z_series

__all__ = [
    "SVARS", "SeriesFraction", "t_fraction", "u_fraction", "cubical_structure",
    "combined_fraction", "appendix_b_pipeline", "cyc", "sym", "DEFAULT_ORDER",
]

SVARS = ("x0", "x1", "x2")
CYCLE = ((0, 1), (1, 2), (2, 0))
DEFAULT_ORDER = 5
MOD_2A1A2 = (2, ("a1", "a2"))


@dataclass(frozen=True)
class SeriesFraction:
    numerator: TSeries
    denominator: TSeries

    def __post_init__(self):
        if self.denominator.is_zero():
            raise ZeroDivisionError("zero denominator")

    @property
    def numerator_valuation(self):
        return self.numerator.valuation()

    @property
    def denominator_valuation(self):
        return self.denominator.valuation()

    def truncate(self, order):
        return SeriesFraction(self.numerator.truncate(order), self.denominator.truncate(order))


def _xs():
    return [TSeries.var(SVARS, CURVE_VARS, v) for v in SVARS]


def _zs(curve, order):
    z = z_series(curve, order)
    return [z.rename({"x": v}, SVARS) for v in SVARS]


def _product(factors):
    result = factors[0]
    for f in factors[1:]:
        result = result * f
    return result


def t_fraction(curve, order):
    """Numerator prod_cyc(x_i z_j - x_j z_i); denominator det(x_i, 1, z_i) z0 z1 z2.

    Both are returned to total degree ``< order``.
    """
    x = _xs()
    zs = _zs(curve, max(4, order - 8))
    num = _product([x[i] * zs[j] - x[j] * zs[i] for i, j in CYCLE])
    # det of rows (x_i, 1, z_i) expands to sum_cyc (x1 z0 - x0 z1)
    det3 = sum((x[j] * zs[i] - x[i] * zs[j] for i, j in CYCLE), TSeries.zero(SVARS, CURVE_VARS))
    den = det3 * zs[0] * zs[1] * zs[2]
    return SeriesFraction(num.truncate(order), den.truncate(order))


def _fgl_pairs(curve, order):
    law = fgl(curve, order)
    x = _xs()
    pairs = {}
    for i, j in CYCLE:
        pairs[i, j] = law.rename({"x0": SVARS[i], "x1": SVARS[j]}, SVARS)
    triple = law.substitute({"x0": pairs[0, 1], "x1": x[2]}, SVARS)
    return pairs, triple


def u_fraction(curve, order):
    """Numerator prod_cyc(x_i +F x_j); denominator x0 x1 x2 (x0 +F x1 +F x2)."""
    x = _xs()
    pairs, triple = _fgl_pairs(curve, max(2, order - 2))
    num = _product([pairs[ij] for ij in CYCLE])
    den = x[0] * x[1] * x[2] * triple
    return SeriesFraction(num.truncate(order), den.truncate(order))


def combined_fraction(curve, order):
    """t/u as one fraction N/D with the common factor x0^3 x1^3 x2^3 removed.

    ``N`` and ``D`` are returned to total degree ``< order``; both have
    valuation 7.
    """
    t = t_fraction(curve, order + 9)
    u = u_fraction(curve, order - 3)
    num = (t.numerator * u.denominator).divide_monomial((3, 3, 3))
    den = (t.denominator * u.numerator).divide_monomial((3, 3, 3))
    return SeriesFraction(num.truncate(order), den.truncate(order))


def cubical_structure(curve, order=DEFAULT_ORDER, mod=None):
    """r_U = t/u in x0, x1, x2 to total degree ``< order``; constant term 1.

    ``mod`` is an optional ``(prime, killed_vars)`` pair applied to the
    result, e.g. ``(2, ("a1", "a2"))``.
    """
    if order < 1:
        raise ValueError("order must be positive")
    frac = combined_fraction(curve, order + 7)
    r = graded_divide(frac.numerator, frac.denominator)
    r = r.truncate(order)
    if mod is not None:
        prime, killed = mod
        r = r.reduce_mod(prime, killed)
    return r


# ---------------------------------------------------------------------------

def cyc(f, xs):
    """sum over the cyclic permutations of the indices of ``f(x0, x1, x2)``."""
    return f(xs[0], xs[1], xs[2]) + f(xs[1], xs[2], xs[0]) + f(xs[2], xs[0], xs[1])


def cyc_prod(f, xs):
    return f(xs[0], xs[1], xs[2]) * f(xs[1], xs[2], xs[0]) * f(xs[2], xs[0], xs[1])


def sym(f, xs):
    """sum over all six permutations of the indices of ``f(x0, x1, x2)``."""
    total = None
    for p in permutations(range(3)):
        term = f(*(xs[i] for i in p))
        total = term if total is None else total + term
    return total


def _component(s, d):
    return TSeries(s.svars, s.cvars, s.homogeneous(d))


def _first_difference(a, b):
    diff = a - b
    if diff.is_zero():
        return None
    c, e, k = diff.flat_terms()[0]
    return str(TSeries(diff.svars, diff.cvars, {e: {k: c}}))


def appendix_b_pipeline(order=4):
    """Recompute the mod-(2, a1, a2) verification of the x0 x1 x2 coefficient.

    On the Gamma_1(3) curve, after removing x0^3 x1^3 x2^3, numerator and
    denominator of t/u share their lowest term ``w`` (x-degree 7).  Their
    next terms (x-degree 10, linear in a3) differ by ``v``, and mod 2 one has
    ``v = a3 x0 x1 x2 w``, hence ``r_U = 1 + a3 x0 x1 x2 + ...``.

    Returns a report dict with every intermediate in canonical text form and
    a list of ``(check name, passed)`` pairs; any failed check raises
    :class:`MismatchAgainstPaper` naming the first offending term.
    """
    curve = WeierstrassCurve.gamma13()
    depth = max(order + 7, 11)
    frac = combined_fraction(curve, depth)
    num = frac.numerator.reduce_mod(*MOD_2A1A2)
    den = frac.denominator.reduce_mod(*MOD_2A1A2)

    xs = _xs()
    a3 = TSeries.const(SVARS, CURVE_VARS, curve.a3)

    def mod2(s):
        return s.reduce_mod(2, ("a1", "a2"))

    w_expected = mod2(sym(lambda p, q, r: p ** 4 * q ** 2, xs) * cyc(lambda p, q, r: p, xs))
    # the displayed reduced fraction before extracting leading terms
    num_display = mod2(
        cyc_prod(lambda p, q, r: q ** 2 + a3 * q ** 5 - p ** 2 - a3 * p ** 5, xs)
        * (cyc(lambda p, q, r: p, xs) + cyc(lambda p, q, r: a3 * p ** 2 * q ** 2, xs)))
    den_display = mod2(
        cyc(lambda p, q, r: q * p ** 3 + a3 * q * p ** 6 - p * q ** 3 - a3 * p * q ** 6, xs)
        * cyc_prod(lambda p, q, r: 1 + a3 * p ** 3, xs)
        * cyc_prod(lambda p, q, r: p + q + a3 * p ** 2 * q ** 2, xs))
    v_over_a3_display = mod2(
        sym(lambda p, q, r: p ** 4 * q ** 2, xs) * cyc(lambda p, q, r: p ** 2 * q ** 2, xs)
        + sym(lambda p, q, r: p ** 5 * q ** 4, xs) * cyc(lambda p, q, r: p, xs)
        + sym(lambda p, q, r: p ** 3 * q, xs)
        * (xs[0] ** 2 * xs[1] ** 2 * xs[2] ** 2 + cyc(lambda p, q, r: p ** 3 * q ** 3, xs)
           + sym(lambda p, q, r: p ** 3 * q ** 2 * r, xs))
        + sym(lambda p, q, r: p ** 3 * q, xs)
        * sym(lambda p, q, r: p ** 5 * q + p ** 4 * q ** 2 + p ** 3 * q ** 2 * r, xs)
        + sym(lambda p, q, r: p ** 8 * q ** 2 + p ** 7 * q ** 3 + p ** 7 * q ** 2 * r
              + p ** 6 * q ** 3 * r, xs))
    v_over_a3_collected = mod2(sym(lambda p, q, r: p ** 5 * q ** 4 * r + p ** 5 * q ** 3 * r ** 2
                                   + p ** 6 * q ** 3 * r, xs))
    xyz = xs[0] * xs[1] * xs[2]

    w_num, w_den = _component(num, 7), _component(den, 7)
    lower_num = [_component(num, d) for d in (8, 9)]
    lower_den = [_component(den, d) for d in (8, 9)]
    v = mod2(_component(num, 10) - _component(den, 10))
    v_over_a3 = TSeries(v.svars, v.cvars, {
        e: {(k[0], k[1], k[2] - 1, k[3], k[4]): c for k, c in cd.items() if k[2] >= 1}
        for e, cd in v.terms.items()})
    r = cubical_structure(curve, order, mod=MOD_2A1A2)

    checks = [
        ("numerator leading term equals w", w_num, w_expected),
        ("denominator leading term equals w", w_den, w_expected),
        ("numerator has no x-degree 8, 9 terms", lower_num[0] + lower_num[1],
         TSeries.zero(SVARS, CURVE_VARS)),
        ("denominator has no x-degree 8, 9 terms", lower_den[0] + lower_den[1],
         TSeries.zero(SVARS, CURVE_VARS)),
        ("reduced numerator display, x-degree 7", w_num, _component(num_display, 7)),
        ("reduced numerator display, x-degree 10", _component(num, 10), _component(num_display, 10)),
        ("reduced denominator display, x-degree 7", w_den, _component(den_display, 7)),
        ("reduced denominator display, x-degree 10", _component(den, 10), _component(den_display, 10)),
        ("v is divisible by a3", a3 * v_over_a3, v),
        ("v/a3 equals the expanded display", v_over_a3, v_over_a3_display),
        ("v/a3 equals the collected display", v_over_a3, v_over_a3_collected),
        ("v = a3 x0 x1 x2 w", v, mod2(a3 * xyz * w_expected)),
        ("r_U = 1 + a3 x0 x1 x2 + O(4)", r.with_order(4),
         (TSeries.one(SVARS, CURVE_VARS) + a3 * xyz).with_order(4)),
    ]
    results = []
    for name, got, expected in checks:
        bad = _first_difference(got, expected)
        if bad is not None:
            raise MismatchAgainstPaper(f"{name}: first offending term {bad}", term=bad)
        results.append((name, True))
    return {
        "w": str(w_expected),
        "numerator_lowest": str(w_num),
        "denominator_lowest": str(w_den),
        "numerator_second": str(_component(num, 10)),
        "denominator_second": str(_component(den, 10)),
        "v": str(v),
        "v_over_a3": str(v_over_a3),
        "x0x1x2_w": str(mod2(xyz * w_expected)),
        "r_U": str(r),
        "checks": results,
    }
