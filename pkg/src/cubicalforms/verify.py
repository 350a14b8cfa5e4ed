"""Recompute every pinned formula and property check from scratch.

Criteria are numbered 1-9; :func:`run_suite` returns one :class:`Check` per
individual assertion, each tagged with its criterion.  Golden files in
``cubicalforms/golden`` hold the expected canonical text.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from importlib import resources
from itertools import permutations

from .cubical import MOD_2A1A2, SVARS, appendix_b_pipeline, cubical_structure
from .errors import CubicalFormsError
from .involution import (Q_tau_identity, g_minus_inverse_mod2, pontryagin_root_invariance,
                         twisted_compose_check)
from .qchar import level3_genus_x, phi_exp, phi_product, psi_series
from .series import TSeries
from .ssq import DEFAULT_WINDOW
from .ssq import suite as ssq_suite
from .weierstrass import CURVE_VARS, WeierstrassCurve, fgl, z_series

__all__ = ["Check", "golden", "run_suite", "format_report", "CRITERIA", "RUNTIME_LIMITS"]

# seconds allowed per criterion (None: no separate limit)
RUNTIME_LIMITS = {1: 1.0, 2: 60.0, 3: 300.0, 4: None, 5: None, 6: None, 7: 30.0, 8: None, 9: 300.0}


@dataclass
class Check:
    criterion: int
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    extra: dict = field(default_factory=dict)


def golden(name):
    return resources.files("cubicalforms").joinpath("golden", name).read_text().strip()


def _text_check(criterion, name, got, golden_name):
    expected = golden(golden_name)
    got = str(got)
    if got == expected:
        return Check(criterion, name, True, got if len(got) < 120 else f"{len(got)} characters")
    return Check(criterion, name, False, f"expected {expected!r}, got {got!r}")


def _series_check(criterion, name, got, expected):
    diff = got - expected
    if diff.is_zero():
        return Check(criterion, name, True)
    c, e, k = diff.flat_terms()[0]
    return Check(criterion, name, False, f"first offending term: {c} at {e} {k}")


def criterion_1():
    z = z_series(WeierstrassCurve.general(), 7)
    return [_text_check(1, "z(x) to order 7 on the general curve", z, "zseries_general_order7.txt")]


def criterion_2():
    curve = WeierstrassCurve.general()
    checks = [_text_check(2, "x0 +F x1 to total degree 3", fgl(curve, 4), "fgl_general_order4.txt")]
    order = 7
    law = fgl(curve, order)
    sv = ("x0", "x1", "x2")
    x = {v: TSeries.var(sv, CURVE_VARS, v) for v in sv}
    left_inner = law.substitute({"x0": x["x0"], "x1": x["x1"]}, sv)
    right_inner = law.substitute({"x0": x["x1"], "x1": x["x2"]}, sv)
    left = law.substitute({"x0": left_inner, "x1": x["x2"]}, sv).with_order(order)
    right = law.substitute({"x0": x["x0"], "x1": right_inner}, sv).with_order(order)
    checks.append(_series_check(2, "associativity through total degree 6", left, right))
    return checks


def criterion_3():
    r = cubical_structure(WeierstrassCurve.general(), 5)
    checks = [_text_check(3, "coefficient of x0*x1*x2", r.coefficient((1, 1, 1)),
                          "rU_coefficient_x0x1x2.txt")]
    for e in ((2, 1, 1), (1, 2, 1), (1, 1, 2)):
        mono = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip(SVARS, e))
        checks.append(_text_check(3, f"coefficient of {mono}", r.coefficient(e),
                                  "rU_coefficient_x0sq_x1_x2.txt"))
    return checks


def criterion_4():
    r = cubical_structure(WeierstrassCurve.gamma13(), 4, mod=MOD_2A1A2)
    checks = [_text_check(4, "r_U on Gamma_1(3) mod (2, a1, a2)", r,
                          "rU_gamma13_mod_2_a1_a2_order4.txt")]
    report = appendix_b_pipeline(4)
    for name, ok in report["checks"]:
        checks.append(Check(4, f"mod-2 pipeline: {name}", ok))
    checks.append(_text_check(4, "w matches golden", report["w"], "appendixB_w.txt"))
    checks.append(_text_check(4, "v matches golden", report["v"], "appendixB_v.txt"))
    return checks


def criterion_5():
    order = 6
    r = cubical_structure(WeierstrassCurve.general(), order)
    checks = []
    bad = [p for p in permutations(range(3)) if r.permute(p) != r]
    checks.append(Check(5, "S_3-invariance to order 6", not bad, f"failing permutations: {bad}" if bad else ""))
    one = TSeries.one(SVARS, CURVE_VARS).with_order(order)
    for v in SVARS:
        checks.append(_series_check(5, f"r_U = 1 after {v} = 0", r.set_zero(v), one))
    return checks


def criterion_6():
    checks = []
    res = twisted_compose_check(10)
    checks.append(Check(6, "g_{-a}(g_a(x)) = x to order 10", res["twisted_is_identity"], str(res["twisted"])))
    q = Q_tau_identity(10)
    one = TSeries.one(("x",), CURVE_VARS).with_order(10)
    checks.append(_series_check(6, "Q(x) Q^tau(g(x)) = 1 to order 10", q, one))
    diff = g_minus_inverse_mod2(8)
    checks.append(Check(6, "g = [-1] mod 2 to order 8", diff.is_zero(), str(diff)))
    inv = pontryagin_root_invariance(8)
    checks.append(Check(6, "x iota(x) invariant under x -> iota(x) to order 8", inv.is_zero(), str(inv)))
    return checks


def criterion_7():
    prod, expo = phi_product(9, 5), phi_exp(9, 5)
    same = prod == expo
    detail = "" if same else f"difference {prod - expo}"
    return [
        Check(7, "product form = exponential form through x^9, q^5", same, detail),
        Check(7, "coefficients are rational", prod.field == "Q" and expo.field == "Q", prod.field),
    ]


def criterion_8():
    x = level3_genus_x(5, 3, var="z")
    psi = psi_series(5, 3, var="z")
    constant = x.x_slice(0)
    linear = x.x_slice(1)
    psi0 = psi.x_slice(0)
    return [
        Check(8, "x(z) has zero constant term", constant.is_zero(), str(constant)),
        Check(8, "x(z) has linear coefficient 1", linear.terms == {((0,), 0): 1}, str(linear)),
        Check(8, "psi(0) = 1", psi0.terms == {((0,), 0): 1}, str(psi0)),
        Check(8, "computed over Q(zeta_3)", x.field == "Q(zeta3)", x.field),
    ]


def criterion_9(window=DEFAULT_WINDOW, rows=None):
    return [Check(9, name, ok, detail) for name, ok, detail in ssq_suite(window, rows=rows)]


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9}


def run_criterion(n, **kwargs):
    start = time.perf_counter()
    try:
        checks = CRITERIA[n](**kwargs)
    except CubicalFormsError as exc:
        checks = [Check(n, "computation", False, f"{type(exc).__name__}: {exc}")]
    elapsed = time.perf_counter() - start
    for c in checks:
        c.seconds = elapsed
    limit = RUNTIME_LIMITS[n]
    if limit is not None:
        checks.append(Check(n, f"runtime under {limit:g} s", elapsed < limit, f"{elapsed:.2f} s", elapsed))
    return checks


def run_suite(suite="paper", criteria=None, ssq_window=DEFAULT_WINDOW):
    if suite != "paper":
        raise ValueError(f"unknown suite {suite!r}")
    out = []
    for n in criteria or sorted(CRITERIA):
        kwargs = {"window": ssq_window} if n == 9 else {}
        out.extend(run_criterion(n, **kwargs))
    return out


def format_report(checks):
    lines = []
    for c in checks:
        mark = "PASS" if c.passed else "FAIL"
        line = f"[{mark}] {c.criterion}. {c.name}"
        if c.detail and (not c.passed or len(c.detail) < 60):
            line += f" ({c.detail})"
        lines.append(line)
    total = sum({c.criterion: c.seconds for c in checks}.values())
    passed = sum(c.passed for c in checks)
    lines.append(f"{passed}/{len(checks)} checks passed in {total:.1f} s")
    return "\n".join(lines) + "\n"
