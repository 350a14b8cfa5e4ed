from __future__ import annotations

import json
import random

import pytest

from cubicalforms import lattice
from cubicalforms.errors import MalformedElement, WindowTooSmall
from cubicalforms.ssq import (DIFFERENTIAL_DEGREE, PERMANENT_CYCLES, Degree, PageElement, SpectralSequence,
                              Window, d_r, e_infinity_chart, filtration_zero_check, leibniz_defect,
                              page_homology, parse_element, render_ascii_chart)

SMALL = Window(kmax=20, filtration_max=10, u2_max=2, u1_max=6)
a, u1, u2 = PageElement.a(), PageElement.u1(), PageElement.u2()
s = PageElement.sigma


@pytest.fixture(scope="module")
def ss():
    return SpectralSequence(SMALL)


def test_degrees():
    assert a.degree == Degree(0, 1)
    assert s(1).degree == Degree(1, -1)
    assert u1.degree == Degree(-1, -1)
    assert u2.degree == Degree(-3, -3)
    # a1 = u1 sigma^-1 and a3 = u2 sigma^-3 sit in integral degrees -2 and -6
    assert PageElement.a1().degree == Degree(-2, 0)
    assert PageElement.a3().degree == Degree(-6, 0)


def test_d1_generator():
    assert d_r(1, s(-1)) == 2 * a


def test_d1_sigma():
    # sign fixed by the sigma-weight Leibniz rule on sigma * sigma^-1 = 1
    assert d_r(1, s(1)) == 2 * a * s(2)
    assert leibniz_defect(1, s(1), s(-1)).is_zero()
    assert d_r(1, s(1) * s(-1)).is_zero()


def test_d3_example():
    assert d_r(3, s(-2)) == u1 * a ** 3
    assert d_r(3, u1 * s(-2)) == u1 ** 2 * a ** 3


def test_d7_generator():
    assert d_r(7, s(-4)) == u2 * a ** 7


def test_other_differentials_vanish():
    for r in (2, 4, 5, 6, 8, 9):
        assert d_r(r, s(-4) + s(-1)).is_zero()


def test_d_rejects_garbage():
    with pytest.raises(MalformedElement):
        d_r(1, "sigma")
    with pytest.raises(MalformedElement):
        d_r(0, s(1))


def test_malformed_elements():
    with pytest.raises(MalformedElement):
        PageElement({(-1, 0, 0, 0): 1})
    with pytest.raises(MalformedElement):
        PageElement.monomial(c=__import__("fractions").Fraction(1, 2))
    with pytest.raises(MalformedElement):
        parse_element("a*b")
    with pytest.raises(MalformedElement):
        (a + s(1)).degree


def test_permanent_cycles_are_d1_cycles():
    for e in PERMANENT_CYCLES.values():
        assert d_r(1, e).is_zero(), e


def test_permanent_cycle_differentials_are_boundaries():
    # d3(sigma^8) = -4 a^3 u1 sigma^10 is nonzero on E_1 but a boundary on E_3
    ss = SpectralSequence()
    for e in PERMANENT_CYCLES.values():
        for r, page in ((3, 2), (7, 4)):
            d = d_r(r, e)
            assert not d or ss.is_boundary(d, page), (e, r)
    assert d_r(3, s(8)) == -4 * a ** 3 * u1 * s(10)


def test_degree_bookkeeping():
    rng = random.Random(1)
    for r in (1, 3, 7):
        for _ in range(100):
            e = PageElement.monomial(rng.randrange(4), rng.randrange(-12, 13), rng.randrange(3), rng.randrange(2))
            d = d_r(r, e)
            if d:
                assert d.degree - e.degree == DIFFERENTIAL_DEGREE
    assert (2 * a).degree - s(-1).degree == Degree(1, 0)


def test_d1_derivation_random_pairs():
    rng = random.Random(7)
    for _ in range(300):
        e = PageElement.monomial(rng.randrange(3), rng.randrange(-9, 10), rng.randrange(3), rng.randrange(2),
                                 rng.choice([1, -1, 3]))
        f = PageElement.monomial(rng.randrange(3), rng.randrange(-9, 10), rng.randrange(3), rng.randrange(2))
        assert leibniz_defect(1, e, f).is_zero()


def _page_cycle(ss, page, rng):
    row = ss.row(rng.choice([0, 1, 2, -1, -2, 3, 4]))
    n = rng.choice([n for n, zs in row.Z[page].items() if zs])
    return PageElement(rng.choice(row.Z[page][n]))


@pytest.mark.parametrize("r, page", [(3, 2), (7, 4)])
def test_higher_differentials_are_derivations_on_their_page(ss, r, page):
    rng = random.Random(r)
    checked = 0
    for _ in range(800):
        e, f = _page_cycle(ss, page, rng), _page_cycle(ss, page, rng)
        defect = leibniz_defect(r, e, f)
        monos = list(e.terms) + list(f.terms) + list(defect.terms) + list((e * f).terms)
        if not all(SMALL.contains(m) for m in monos) or any(ss.leaky(m, page) for m in monos):
            continue
        assert not defect or ss.is_boundary(defect, page), (e, f, defect)
        checked += 1
    assert checked >= 20


def test_d7_is_not_a_derivation_off_its_page():
    # sigma^2 does not survive to E_4, and there the rule fails
    assert leibniz_defect(7, s(2), s(2)) == -u2 * a ** 7 * s(8)
    assert d_r(3, s(2)) == -u1 * a ** 3 * s(4)


@pytest.mark.parametrize("r", [1, 3, 7])
def test_d_squared_vanishes_on_page(ss, r):
    failures, checked = ss.d_squared_failures(r, rows=range(-4, 5))
    assert not failures
    assert checked > 0


def test_a_has_order_two_on_e2(ss):
    assert ss.is_cycle(a, 2)
    assert ss.class_order(a, 2) == 2
    assert ss.class_order(a, 1) is None


def test_permanent_cycles_survive(ss):
    for name in ("a", "u1", "u2", "sigma^8", "sigma^-8"):
        assert ss.survives(PERMANENT_CYCLES[name], "inf"), name


def test_y_survives_default_window():
    ss = SpectralSequence()
    assert ss.survives(PERMANENT_CYCLES["u2^3*sigma^-8"], "inf")


def test_unit_in_degree_zero(ss):
    gens = ss.generators(0, 0, "inf")
    assert any(str(g) == "1" and order is None for g, order, _ in gens)


def test_sigma_inverse_dies(ss):
    assert not ss.is_cycle(s(-1), 2)
    assert ss.is_boundary(2 * a, 2)


def test_filtration_zero_row_matches_invariants(ss):
    result = filtration_zero_check(ss)
    assert result
    assert all(result.values())


def test_untouched_bidegree_passes_through(ss):
    # u1^2 * sigma^-2 = a1^2: no d1 in or out
    e = u1 ** 2 * s(-2)
    assert ss.is_cycle(e, 2) and not ss.is_boundary(e, 2)
    assert ss.class_order(e, 2) is None


def test_page_homology_reports_orders():
    pages = page_homology(1, SMALL, rows=(1,))
    orders = {o for gens in pages.values() for _, o, _ in gens}
    assert 2 in orders


def test_window_edge_is_reported():
    tiny = Window(kmax=4, filtration_max=2, u2_max=0, u1_max=1)
    ss = SpectralSequence(tiny)
    with pytest.raises(WindowTooSmall):
        ss.is_cycle(a ** 2 * s(-1), 2)
    with pytest.raises(WindowTooSmall):
        ss.is_cycle(s(10), 2)
    with pytest.raises(WindowTooSmall):
        e_infinity_chart(tiny)


def test_chart(ss):
    chart = e_infinity_chart(SMALL, ss=ss)
    json.dumps(chart)
    reps = {g["representative"] for g in chart["generators"]}
    assert "1" in reps
    assert any(g["stem"] == 0 and g["filtration"] == 0 for g in chart["generators"])
    text = render_ascii_chart(chart)
    assert "E_infinity" in text


def test_text_round_trip():
    for e in (2 * a * s(2) - u1 ** 2 * s(-3), PERMANENT_CYCLES["u2^3*sigma^-8"], PageElement.one(),
              PageElement()):
        assert parse_element(str(e)) == e
    assert parse_element("a1^2") == u1 ** 2 * s(-2)


def test_e1_form():
    assert (u1 * s(-1)).e1_form() == "a1"
    assert (u2 * s(-3) * a).e1_form() == "a3*a"
