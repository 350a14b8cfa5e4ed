from __future__ import annotations

from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicalforms.coeffring import ZETA, Eisenstein
from cubicalforms.errors import BeyondTruncation
from cubicalforms.qchar import (QXSeries, bernoulli, character_product, divisor_sum, eisenstein_G,
                                level3_genus_x, phi_at_shift, phi_exp, phi_product, psi_series)


def test_bernoulli():
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(6) == Fraction(1, 42)
    assert bernoulli(12) == Fraction(-691, 2730)


def test_divisor_sums():
    assert divisor_sum(1, 6) == 12
    assert divisor_sum(3, 2) == 9


def test_eisenstein_coefficients():
    g2 = eisenstein_G(2, 4)
    assert g2.coefficient(0, 0) == Fraction(-1, 24)
    assert g2.coefficient(0, 1) == 1
    assert g2.coefficient(0, 4) == 7
    g4 = eisenstein_G(4, 3)
    assert g4.coefficient(0, 0) == Fraction(1, 240)
    assert g4.coefficient(0, 2) == 9


def test_eisenstein_rejects_odd_weight():
    with pytest.raises(ValueError):
        eisenstein_G(3, 2)


def test_phi_q0_slice():
    phi = phi_product(7, 3)
    expected = {(1,): 1, (3,): Fraction(1, 24), (5,): Fraction(1, 1920), (7,): Fraction(1, 322560)}
    assert phi.q_slice(0) == expected


def test_phi_is_odd():
    phi = phi_product(9, 4)
    assert phi.negate_x() == -phi
    assert all(sum(e) % 2 == 1 for e, _ in phi.terms)


def test_phi_linear_coefficient():
    phi = phi_product(9, 5)
    assert phi.x_slice(1) == QXSeries.const(("x",), 9, 5, 1)


def test_product_equals_exponential_form():
    prod, expo = phi_product(9, 5), phi_exp(9, 5)
    assert prod == expo
    assert prod.field == "Q"


def test_exponential_form_with_vanishing_eisenstein():
    zero = lambda weight: QXSeries(("x",), 9, 3)
    assert phi_exp(9, 3, eisenstein=zero) == QXSeries.var(("x",), 9, 3, "x")


def test_wrong_eisenstein_normalization_breaks_identity():
    doubled = lambda weight: eisenstein_G(weight, 3, ("x",), 9).scale(2)
    assert phi_exp(9, 3, eisenstein=doubled) != phi_product(9, 3)


def test_shifted_constant():
    value = phi_at_shift(3, "-omega")
    assert value.coefficient(0, 0) == ZETA ** 2 - ZETA
    assert value.coefficient(0, 0) == Eisenstein(-1, -2)
    assert value.field == "Q(zeta3)"


def test_psi_at_zero():
    psi = psi_series(5, 3)
    assert psi.at_zero() == QXSeries.const(("z",), 5, 3, 1)


def test_genus_leading_terms():
    x = level3_genus_x(5, 3)
    assert x.at_zero().is_zero()
    assert x.x_slice(1) == QXSeries.const(("z",), 5, 3, 1)
    assert x.field == "Q(zeta3)"


# independent q^0 oracle: at q^0 every product factor is 1, so
# x(z) = (e^{z/2} - e^{-z/2}) (h - 1/h) / (h e^{z/2} - e^{-z/2}/h) with h = e^{-omega/2}

def _exp_list(c, n):
    return [c ** k * Fraction(1, factorial(k)) for k in range(n + 1)]


def _mul(a, b):
    out = [Eisenstein(0, 0)] * len(a)
    for i, x in enumerate(a):
        for j, y in enumerate(b[:len(a) - i]):
            out[i + j] = out[i + j] + x * y
    return out


def _inv(a):
    inv0 = a[0].inverse()
    out = [inv0]
    for n in range(1, len(a)):
        s = sum((a[k] * out[n - k] for k in range(1, n + 1)), Eisenstein(0, 0))
        out.append(-s * inv0)
    return out


def test_genus_q0_slice_against_oracle():
    n = 3
    h = -ZETA
    hinv = h.inverse()
    assert hinv == 1 + ZETA
    ep = _exp_list(Eisenstein(Fraction(1, 2), 0), n)
    em = _exp_list(Eisenstein(Fraction(-1, 2), 0), n)
    phi = [p - m for p, m in zip(ep, em)]
    shifted = [h * p - hinv * m for p, m in zip(ep, em)]
    genus = _mul(_mul(phi, _inv(shifted)), [shifted[0]] + [Eisenstein(0, 0)] * n)
    computed = level3_genus_x(n, 2).q_slice(0)
    for k in range(n + 1):
        assert genus[k] == computed.get((k,), 0)
    assert genus[2] != 0


def test_character_trivial_cases():
    assert character_product([], 5, 3) == QXSeries.const(("x",), 5, 3, 1)
    assert character_product(["x"], 5, 3).at_zero() == QXSeries.const(("x",), 5, 3, 1)


def test_character_is_inverse_of_psi():
    single = character_product(["x"], 5, 3)
    psi = psi_series(5, 3, var="x")
    assert single * psi == QXSeries.const(("x",), 5, 3, 1)


def test_character_multiplicative():
    both = character_product(["x1", "x2"], 4, 2)
    one = character_product(["x1"], 4, 2).rename(("x1", "x2"), {})
    two = character_product(["x2"], 4, 2).rename(("x1", "x2"), {})
    assert both == one * two
    assert character_product(2, 4, 2) == both


def test_truncation_is_inclusive():
    phi = phi_product(9, 5)
    assert phi.coefficient(9, 5) == phi.coefficient((9,), 5)
    with pytest.raises(BeyondTruncation):
        phi.coefficient(10, 0)
    with pytest.raises(BeyondTruncation):
        phi.coefficient(1, 6)


def test_json_keys():
    data = phi_product(3, 1).to_json()
    assert isinstance(data, dict)
    assert data


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 4), st.integers(0, 3))
def test_product_equals_exponential_form_small_windows(half, q_order):
    x_order = 2 * half + 1
    assert phi_product(x_order, q_order) == phi_exp(x_order, q_order)
