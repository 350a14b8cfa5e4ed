"""Total-degree truncated multivariate power series with polynomial coefficients.

A :class:`TSeries` has *series variables* (``x``, ``x0``, ``x1`` ...), whose
total degree is truncated, and *coefficient variables* (``a1`` ... ``a6``,
``t``) that are never truncated.  Every series knows its guaranteed order
``N``: all terms of total degree ``< N`` are exact and nothing of degree
``>= N`` is known.  Exact polynomials carry ``order == math.inf``.

Products report the sharp guaranteed order
``min(order(s) + val(t), order(t) + val(s))`` rather than the cruder
``min(order(s), order(t))``; the cubical pipeline multiplies many factors
of high valuation and would otherwise have to over-compute every input.
"""
from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from operator import add

from .coeffring import (
    Eisenstein, Poly, _q, monomial_text, padd_into, parse_terms, pdivide_exact, pmul, reduce_terms,
    terms_text,
)
from .errors import (
    BeyondTruncation, NonPositiveValuation, NonUnitConstantTerm, NotDivisible, VariableMismatch,
)

__all__ = ["TSeries", "parse_series", "graded_divide", "divided_difference"]

INF = math.inf


def _cadd(e1, e2):
    return tuple(map(add, e1, e2))


def _clean(cdict):
    return {e: (_q(c) if isinstance(c, Fraction) else c) for e, c in cdict.items() if c}


class TSeries:
    __slots__ = ("svars", "cvars", "terms", "order", "_sorted")

    def __init__(self, svars, cvars, terms, order=INF):
        self.svars = tuple(svars)
        self.cvars = tuple(cvars)
        self.order = order
        ns, nc = len(self.svars), len(self.cvars)
        clean = {}
        for e, c in terms.items():
            if len(e) != ns:
                raise VariableMismatch(f"exponent {e} does not match {self.svars}")
            if sum(e) >= order:
                continue
            if isinstance(c, Poly):
                if c.variables != self.cvars:
                    raise VariableMismatch(f"coefficient over {c.variables}, expected {self.cvars}")
                c = c.terms
            elif not isinstance(c, dict):
                c = {(0,) * nc: c}
            c = _clean(c)
            if c:
                clean[tuple(e)] = c
        self.terms = clean
        self._sorted = None

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, svars, cvars=(), order=INF):
        return cls(svars, cvars, {}, order)

    @classmethod
    def one(cls, svars, cvars=(), order=INF):
        return cls.const(svars, cvars, 1, order)

    @classmethod
    def const(cls, svars, cvars, c, order=INF):
        return cls(svars, cvars, {(0,) * len(tuple(svars)): c}, order)

    @classmethod
    def var(cls, svars, cvars, name, order=INF):
        svars = tuple(svars)
        e = [0] * len(svars)
        e[svars.index(name)] = 1
        return cls(svars, cvars, {tuple(e): 1}, order)

    @classmethod
    def monomial(cls, svars, cvars, exps, coeff=1, order=INF):
        return cls(svars, cvars, {tuple(exps): coeff}, order)

    @classmethod
    def from_poly(cls, poly, svars, cvars, order=INF):
        """Split a Poly over ``svars + cvars`` into series/coefficient parts."""
        svars, cvars = tuple(svars), tuple(cvars)
        poly = poly.with_variables(svars + cvars) if poly.variables != svars + cvars else poly
        ns = len(svars)
        terms = {}
        for e, c in poly.terms.items():
            terms.setdefault(e[:ns], {})[e[ns:]] = c
        return cls(svars, cvars, terms, order)

    # -- basic queries -----------------------------------------------------
    def _items_sorted(self):
        if self._sorted is None:
            self._sorted = sorted(((sum(e), e, c) for e, c in self.terms.items()), key=lambda t: t[0])
        return self._sorted

    def valuation(self):
        """Lower bound on the true valuation: least stored degree, else the order."""
        if self.terms:
            return self._items_sorted()[0][0]
        return self.order

    def is_exact(self):
        return self.order == INF

    def coefficient(self, exps):
        if isinstance(exps, dict):
            exps = tuple(exps.get(v, 0) for v in self.svars)
        exps = tuple(exps)
        if len(exps) != len(self.svars):
            raise VariableMismatch(f"exponent {exps} does not match {self.svars}")
        if sum(exps) >= self.order:
            raise BeyondTruncation(f"degree {sum(exps)} is not below the order {self.order}")
        return Poly(self.cvars, self.terms.get(exps, {}))

    def constant_term(self):
        return self.coefficient((0,) * len(self.svars))

    def homogeneous(self, d):
        """Raw ``{sexp: cdict}`` component of total degree ``d``."""
        if d >= self.order:
            raise BeyondTruncation(f"degree {d} is not below the order {self.order}")
        return {e: c for e, c in self.terms.items() if sum(e) == d}

    def _check(self, other):
        if isinstance(other, TSeries):
            if other.svars != self.svars or other.cvars != self.cvars:
                raise VariableMismatch(
                    f"({self.svars}; {self.cvars}) vs ({other.svars}; {other.cvars})")
            return other
        if isinstance(other, Poly):
            return TSeries.const(self.svars, self.cvars, other)
        if isinstance(other, (int, Fraction, Eisenstein)):
            return TSeries.const(self.svars, self.cvars, other)
        return NotImplemented

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        terms = {e: dict(c) for e, c in self.terms.items() if sum(e) < order}
        for e, c in other.terms.items():
            if sum(e) >= order:
                continue
            acc = terms.setdefault(e, {})
            padd_into(acc, c)
            if not acc:
                del terms[e]
        return TSeries(self.svars, self.cvars, terms, order)

    __radd__ = __add__

    def __neg__(self):
        return TSeries(self.svars, self.cvars,
                       {e: {k: -v for k, v in c.items()} for e, c in self.terms.items()}, self.order)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def guaranteed_product_order(self, other):
        return min(self.order + other.valuation(), other.order + self.valuation())

    def mul(self, other, order=None):
        """Product, optionally truncated below ``order``.

        ``order`` may only lower the guaranteed order, never raise it.
        """
        other = self._check(other)
        target = self.guaranteed_product_order(other)
        if order is not None:
            target = min(target, order)
        acc = {}
        a_items = self._items_sorted()
        b_items = other._items_sorted()
        if not a_items or not b_items:
            return TSeries(self.svars, self.cvars, {}, target)
        vb = b_items[0][0]
        for d1, e1, c1 in a_items:
            if d1 + vb >= target:
                break
            for d2, e2, c2 in b_items:
                if d1 + d2 >= target:
                    break
                e = _cadd(e1, e2)
                slot = acc.get(e)
                if slot is None:
                    slot = acc[e] = {}
                for k1, v1 in c1.items():
                    for k2, v2 in c2.items():
                        k = _cadd(k1, k2)
                        s = slot.get(k, 0) + v1 * v2
                        if s:
                            slot[k] = s
                        else:
                            del slot[k]
        return TSeries(self.svars, self.cvars, acc, target)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self.mul(other)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.invert_unit() ** (-n)
        result = TSeries.one(self.svars, self.cvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def truncate(self, order):
        if order > self.order:
            raise BeyondTruncation(f"cannot raise order {self.order} to {order}")
        return TSeries(self.svars, self.cvars, self.terms, order)

    def with_order(self, order):
        """Truncate to ``min(order, self.order)``."""
        return TSeries(self.svars, self.cvars, self.terms, min(order, self.order))

    def scale(self, c):
        if isinstance(c, Poly):
            return self * TSeries.const(self.svars, self.cvars, c)
        return TSeries(self.svars, self.cvars,
                       {e: {k: v * c for k, v in d.items()} for e, d in self.terms.items()}, self.order)

    def __eq__(self, other):
        if isinstance(other, TSeries):
            return (self.svars == other.svars and self.cvars == other.cvars
                    and self.order == other.order and self.terms == other.terms)
        return NotImplemented

    def __hash__(self):
        return hash((self.svars, self.cvars, self.order, len(self.terms)))

    def agrees_with(self, other, order=None):
        """Equality of all coefficients below ``order`` (default: both orders)."""
        other = self._check(other)
        bound = min(self.order, other.order) if order is None else order
        if bound > min(self.order, other.order):
            raise BeyondTruncation(f"cannot compare to order {bound}")
        return (self - other).with_order(bound).terms == {}

    def is_zero(self):
        return not self.terms

    # -- unit inversion ----------------------------------------------------
    def invert_unit(self):
        """Multiplicative inverse of a series whose constant term is a nonzero scalar."""
        c0 = self.terms.get((0,) * len(self.svars), {})
        zero_c = (0,) * len(self.cvars)
        if not c0 or list(c0) != [zero_c]:
            raise NonUnitConstantTerm("constant term is not an invertible scalar")
        a0 = c0[zero_c]
        inv0 = a0.inverse() if isinstance(a0, Eisenstein) else _q(Fraction(1) / a0)
        if self.order == INF:
            raise ValueError("inverse of an exact series needs an explicit order; use with_order first")
        n = self.order
        # h = 1 - inv0*self has positive valuation; 1/self = inv0 * sum h^k
        h = TSeries.one(self.svars, self.cvars) - self.scale(inv0)
        h = h.with_order(n)
        result = TSeries.one(self.svars, self.cvars, n)
        power = TSeries.one(self.svars, self.cvars, n)
        for _ in range(n):
            power = power.mul(h, order=n)
            if power.is_zero():
                break
            result = result + power
        return result.scale(inv0).with_order(n)

    # -- substitution ------------------------------------------------------
    def substitute(self, assignments, svars=None):
        """Compose: replace each series variable by a series of positive valuation.

        ``assignments`` maps variable names to TSeries over a common target
        variable list ``svars`` (inferred from the assignments when omitted).
        Variables not assigned are kept and must appear in the target list.
        """
        if svars is None:
            if not assignments:
                return self
            svars = next(iter(assignments.values())).svars
        svars = tuple(svars)
        images = []
        for v in self.svars:
            g = assignments.get(v)
            if g is None:
                if v not in svars:
                    raise VariableMismatch(f"unassigned variable {v} missing from {svars}")
                g = TSeries.var(svars, self.cvars, v)
            if g.svars != svars or g.cvars != self.cvars:
                raise VariableMismatch("substituted series must share target variables")
            if g.valuation() < 1 or (g.terms and (0,) * len(svars) in g.terms):
                raise NonPositiveValuation(f"image of {v} has a constant term")
            images.append(g)
        used = [i for i in range(len(self.svars))
                if any(e[i] for e in self.terms)]
        vmin = min((images[i].valuation() for i in used), default=INF)
        if vmin == INF:
            vmin = 1
        target = self.order * vmin if self.order != INF else INF
        for i in used:
            target = min(target, images[i].order)
        if target == INF:
            # exact composition of a polynomial with polynomials
            target = INF
        if all(self._is_plain_variable(g) for g in images) and target == self.order:
            return self._relabel(images, svars)
        cache = [dict() for _ in images]

        def power(i, k):
            if k == 0:
                return TSeries.one(svars, self.cvars)
            p = cache[i].get(k)
            if p is None:
                p = images[i] if k == 1 else power(i, k - 1).mul(images[i], order=target)
                cache[i][k] = p
            return p

        acc = TSeries.zero(svars, self.cvars, target)
        for e, c in self.terms.items():
            term = TSeries.const(svars, self.cvars, c)
            for i, k in enumerate(e):
                if k:
                    term = term.mul(power(i, k), order=target)
            acc = acc + term
        return acc.with_order(target)

    @staticmethod
    def _is_plain_variable(g):
        if g.order != INF or len(g.terms) != 1:
            return False
        (e, c), = g.terms.items()
        zero_c = (0,) * len(g.cvars)
        return sum(e) == 1 and list(c.items()) == [(zero_c, 1)]

    def _relabel(self, images, svars):
        idx = [next(iter(g.terms)).index(1) for g in images]
        terms = {}
        for e, c in self.terms.items():
            new = [0] * len(svars)
            for i, k in zip(idx, e):
                new[i] += k
            new = tuple(new)
            acc = terms.setdefault(new, {})
            padd_into(acc, c)
        return TSeries(svars, self.cvars, terms, self.order)

    def rename(self, mapping, svars=None):
        """Rename series variables (``{old: new}``) into the list ``svars``."""
        svars = tuple(svars) if svars is not None else tuple(mapping.get(v, v) for v in self.svars)
        images = [TSeries.var(svars, self.cvars, mapping.get(v, v)) for v in self.svars]
        return self._relabel(images, svars)

    def permute(self, perm):
        """Apply a permutation of the series variables given as an index tuple."""
        terms = {tuple(e[perm[i]] for i in range(len(e))): c for e, c in self.terms.items()}
        return TSeries(self.svars, self.cvars, terms, self.order)

    def divide_monomial(self, exps):
        """Exact division by a monomial; every stored term must be divisible.

        The order drops by the monomial's degree, which is only sound when the
        true series is divisible as well (the caller's responsibility).
        """
        exps = tuple(exps)
        deg = sum(exps)
        terms = {}
        for e, c in self.terms.items():
            if any(a < b for a, b in zip(e, exps)):
                raise NotDivisible(f"term {e} is not divisible by {exps}")
            terms[tuple(a - b for a, b in zip(e, exps))] = c
        return TSeries(self.svars, self.cvars, terms, self.order - deg)

    def set_zero(self, name):
        i = self.svars.index(name)
        return TSeries(self.svars, self.cvars, {e: c for e, c in self.terms.items() if not e[i]},
                       self.order)

    # -- coefficient maps --------------------------------------------------
    def map_coefficients(self, f):
        """Apply ``f`` (Poly -> Poly over the same variables) to each coefficient."""
        terms = {}
        for e, c in self.terms.items():
            p = f(Poly(self.cvars, c))
            if p:
                terms[e] = p.terms
        return TSeries(self.svars, self.cvars, terms, self.order)

    def subs_coefficients(self, values):
        return self.map_coefficients(lambda p: p.subs(values))

    def reduce_mod(self, prime=None, killed_vars=()):
        for v in killed_vars:
            if v not in self.cvars:
                raise VariableMismatch(f"{v} is not a coefficient variable")
        terms = {}
        for e, c in self.terms.items():
            r = reduce_terms(c, self.cvars, prime, killed_vars)
            if r:
                terms[e] = r
        return TSeries(self.svars, self.cvars, terms, self.order)

    def with_cvars(self, cvars):
        cvars = tuple(cvars)
        idx = [cvars.index(v) for v in self.cvars]
        terms = {}
        for e, c in self.terms.items():
            nc = {}
            for k, v in c.items():
                new = [0] * len(cvars)
                for i, x in zip(idx, k):
                    new[i] = x
                nc[tuple(new)] = v
            terms[e] = nc
        return TSeries(self.svars, cvars, terms, self.order)

    # -- text / json -------------------------------------------------------
    def flat_terms(self):
        """Canonically ordered ``(scalar, series exps, coefficient exps)`` triples."""
        out = []
        for e in sorted(self.terms, key=lambda e: (sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            for k in sorted(c, key=lambda k: (-sum(k), tuple(-x for x in k))):
                out.append((c[k], e, k))
        return out

    def __str__(self):
        items = []
        for c, e, k in self.flat_terms():
            mono = "*".join(p for p in (monomial_text(self.cvars, k), monomial_text(self.svars, e)) if p)
            items.append((c, mono))
        body = terms_text(items)
        if self.order == INF:
            return body
        if body == "0":
            return f"O({self.order})"
        return f"{body} + O({self.order})"

    def __repr__(self):
        return f"TSeries({self.svars}, {self.cvars}, {str(self)!r})"

    def to_json(self):
        return {
            "series_variables": list(self.svars),
            "coefficient_variables": list(self.cvars),
            "order": None if self.order == INF else self.order,
            "terms": [
                {"exponent": list(e), "coefficient": str(Poly(self.cvars, self.terms[e]))}
                for e in sorted(self.terms, key=lambda e: (sum(e), tuple(-x for x in e)))
            ],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        from .coeffring import parse_poly
        cvars = tuple(data["coefficient_variables"])
        terms = {tuple(t["exponent"]): parse_poly(t["coefficient"], cvars) for t in data["terms"]}
        order = data["order"]
        return cls(data["series_variables"], cvars, terms, INF if order is None else order)


_ORDER = re.compile(r"(?:^|\+)\s*O\(\s*(?:total_degree\s+)?(\d+)\s*\)\s*$")


def parse_series(text, svars, cvars=()):
    """Inverse of ``str(TSeries)``."""
    svars, cvars = tuple(svars), tuple(cvars)
    text = text.strip()
    order = INF
    m = _ORDER.search(text)
    if m:
        order = int(m.group(1))
        text = text[:m.start()].strip()
    terms = {}
    for c, powers in parse_terms(text):
        e = [0] * len(svars)
        k = [0] * len(cvars)
        for v, p in powers.items():
            if v in svars:
                e[svars.index(v)] += p
            elif v in cvars:
                k[cvars.index(v)] += p
            else:
                raise VariableMismatch(f"unknown variable {v!r}")
        slot = terms.setdefault(tuple(e), {})
        padd_into(slot, {tuple(k): c})
    return TSeries(svars, cvars, terms, order)


# ---------------------------------------------------------------------------

def _flatten(component):
    """``{sexp: cdict}`` -> ``{sexp + cexp: c}``."""
    out = {}
    for e, c in component.items():
        for k, v in c.items():
            out[e + k] = v
    return out


def graded_divide(num, den, order=None):
    """Quotient of two series, computed one total degree at a time.

    With ``d`` the valuation of ``den`` and ``D_d`` its lowest homogeneous
    form, each quotient component ``q_k`` solves
    ``q_k * D_d = N_{k+d} - sum_{j<k} q_j * D_{k+d-j}`` by exact polynomial
    division.  A residual that ``D_d`` does not divide means ``num/den`` is
    not a power series and raises :class:`NotDivisible`.
    """
    num = den._check(num)
    if not den.terms:
        raise ZeroDivisionError("denominator has no known nonzero term")
    d0 = den.valuation()
    vn = num.valuation()
    if vn < d0:
        raise NotDivisible(f"numerator valuation {vn} below denominator valuation {d0}")
    target = min(num.order - d0, den.order - d0 + vn - d0)
    if order is not None:
        target = min(target, order)
    if target == INF:
        raise ValueError("quotient of exact series needs an explicit order")
    ns = len(den.svars)
    lead = _flatten(den.homogeneous(d0))
    den_parts = {}
    for e, c in den.terms.items():
        d = sum(e)
        if d > d0:
            slot = den_parts.setdefault(d - d0, {})
            for k, v in c.items():
                slot[e + k] = v
    num_parts = {}
    for e, c in num.terms.items():
        slot = num_parts.setdefault(sum(e), {})
        for k, v in c.items():
            slot[e + k] = v
    quotient = {}
    start = vn - d0 if num.terms else target
    for k in range(start, int(target)):
        residual = dict(num_parts.get(k + d0, {}))
        for j, qj in quotient.items():
            part = den_parts.get(k - j)
            if part and qj:
                padd_into(residual, pmul(qj, part), -1)
        qk = pdivide_exact(residual, lead) if residual else {}
        quotient[k] = qk
    terms = {}
    for qk in quotient.values():
        for flat, v in qk.items():
            terms.setdefault(flat[:ns], {})[flat[ns:]] = v
    return TSeries(den.svars, den.cvars, terms, target)


def divided_difference(f, var_a, var_b):
    """``(f(B) - f(A)) / (B - A)`` for univariate ``f``, expanded termwise."""
    if len(f.svars) != 1:
        raise VariableMismatch("divided difference needs a univariate series")
    svars = (var_a, var_b)
    terms = {}
    for (n,), c in f.terms.items():
        for i in range(n):
            slot = terms.setdefault((i, n - 1 - i), {})
            padd_into(slot, c)
    order = f.order - 1 if f.order != INF else INF
    return TSeries(svars, f.cvars, terms, order)
