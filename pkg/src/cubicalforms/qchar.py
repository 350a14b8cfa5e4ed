"""Exact q-expansions of the theta function, Eisenstein series and the level-3 genus.

All objects are :class:`QXSeries`: truncated in the total degree of the
x-variables and, independently, in the power of ``q``.  Both orders are
inclusive: ``x_order = 9`` keeps x^9.  Coefficients are
rationals or elements of Q(zeta_3).

Shifted theta values ``Phi(tau, x + s)`` with ``s = -omega`` or ``omega``,
``omega = 2 pi i / 3``, are computed from the product form only, writing
``exp(s/2)`` in Q(zeta_3): ``exp(omega/2) = 1 + zeta`` and
``exp(-omega/2) = -zeta``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .coeffring import Eisenstein, ZETA, _q
from .errors import DivisionByNonUnit, VariableMismatch

__all__ = [
    "QXSeries", "bernoulli", "divisor_sum", "eisenstein_G", "phi_product", "phi_exp",
    "phi_at_shift", "psi_series", "level3_genus_x", "character_product", "SHIFTS",
]

# exp(s/2) for the supported shifts s
SHIFTS = {
    None: 1,
    "-omega": -ZETA,
    "omega": 1 + ZETA,
}


def _clean(c):
    if isinstance(c, Fraction):
        return _q(c)
    if isinstance(c, Eisenstein) and c.b == 0:
        return c.a
    return c


class QXSeries:
    """Series in x-variables and q, kept through ``deg_x <= x_order`` and ``deg_q <= q_order``."""

    __slots__ = ("xvars", "x_order", "q_order", "terms")

    def __init__(self, xvars, x_order, q_order, terms=None):
        self.xvars = tuple(xvars)
        self.x_order = x_order
        self.q_order = q_order
        clean = {}
        for (e, j), c in (terms or {}).items():
            e = tuple(e)
            if len(e) != len(self.xvars):
                raise VariableMismatch(f"{e} does not match {self.xvars}")
            if sum(e) > x_order or j > q_order or not c:
                continue
            clean[e, j] = _clean(c)
        self.terms = clean

    @classmethod
    def const(cls, xvars, x_order, q_order, c=1):
        return cls(xvars, x_order, q_order, {((0,) * len(tuple(xvars)), 0): c})

    @classmethod
    def var(cls, xvars, x_order, q_order, name):
        xvars = tuple(xvars)
        e = [0] * len(xvars)
        e[xvars.index(name)] = 1
        return cls(xvars, x_order, q_order, {(tuple(e), 0): 1})

    @classmethod
    def q_monomial(cls, xvars, x_order, q_order, n, c=1):
        return cls(xvars, x_order, q_order, {((0,) * len(tuple(xvars)), n): c})

    @property
    def field(self):
        if any(isinstance(c, Eisenstein) for c in self.terms.values()):
            return "Q(zeta3)"
        return "Q"

    def _check(self, other):
        if isinstance(other, QXSeries):
            if other.xvars != self.xvars:
                raise VariableMismatch(f"{self.xvars} != {other.xvars}")
            return other
        if isinstance(other, (int, Fraction, Eisenstein)):
            return QXSeries.const(self.xvars, self.x_order, self.q_order, other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return QXSeries(self.xvars, min(self.x_order, other.x_order),
                        min(self.q_order, other.q_order), terms)

    __radd__ = __add__

    def __neg__(self):
        return QXSeries(self.xvars, self.x_order, self.q_order,
                        {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        xo = min(self.x_order, other.x_order)
        qo = min(self.q_order, other.q_order)
        terms = {}
        for (e1, j1), c1 in self.terms.items():
            d1 = sum(e1)
            for (e2, j2), c2 in other.terms.items():
                if d1 + sum(e2) > xo or j1 + j2 > qo:
                    continue
                k = (tuple(a + b for a, b in zip(e1, e2)), j1 + j2)
                terms[k] = terms.get(k, 0) + c1 * c2
        return QXSeries(self.xvars, xo, qo, terms)

    __rmul__ = __mul__

    def scale(self, c):
        return QXSeries(self.xvars, self.x_order, self.q_order,
                        {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, QXSeries):
            return (self.xvars == other.xvars and self.x_order == other.x_order
                    and self.q_order == other.q_order and self.terms == other.terms)
        return NotImplemented

    __hash__ = None

    def is_zero(self):
        return not self.terms

    def truncate(self, x_order=None, q_order=None):
        xo = self.x_order if x_order is None else min(x_order, self.x_order)
        qo = self.q_order if q_order is None else min(q_order, self.q_order)
        return QXSeries(self.xvars, xo, qo, self.terms)

    def coefficient(self, x_exps, q_degree):
        if isinstance(x_exps, int):
            x_exps = (x_exps,)
        x_exps = tuple(x_exps)
        if sum(x_exps) > self.x_order or q_degree > self.q_order:
            from .errors import BeyondTruncation
            raise BeyondTruncation(f"({x_exps}, {q_degree}) outside the computed window")
        return self.terms.get((x_exps, q_degree), 0)

    def constant_term(self):
        return self.terms.get(((0,) * len(self.xvars), 0), 0)

    def x_slice(self, x_exps):
        """The q-series multiplying ``x^x_exps``, as a QXSeries of x-degree 0."""
        if isinstance(x_exps, int):
            x_exps = (x_exps,)
        x_exps = tuple(x_exps)
        zero = (0,) * len(self.xvars)
        return QXSeries(self.xvars, self.x_order, self.q_order,
                        {(zero, j): c for (e, j), c in self.terms.items() if e == x_exps})

    def q_slice(self, j):
        """Terms of q-degree ``j`` as ``{x exps: coefficient}``."""
        return {e: c for (e, k), c in self.terms.items() if k == j}

    def at_zero(self):
        """Set every x-variable to 0."""
        return self.x_slice((0,) * len(self.xvars))

    def negate_x(self):
        """x -> -x in every x-variable."""
        return QXSeries(self.xvars, self.x_order, self.q_order,
                        {(e, j): (-c if sum(e) % 2 else c) for (e, j), c in self.terms.items()})

    def rescale_x(self, factor):
        """x -> factor * x."""
        return QXSeries(self.xvars, self.x_order, self.q_order,
                        {(e, j): c * factor ** sum(e) for (e, j), c in self.terms.items()})

    def rename(self, xvars, mapping):
        """Move into the variable list ``xvars`` via ``{old: new}``."""
        xvars = tuple(xvars)
        idx = [xvars.index(mapping.get(v, v)) for v in self.xvars]
        terms = {}
        for (e, j), c in self.terms.items():
            new = [0] * len(xvars)
            for i, k in zip(idx, e):
                new[i] += k
            key = (tuple(new), j)
            terms[key] = terms.get(key, 0) + c
        return QXSeries(xvars, self.x_order, self.q_order, terms)

    def invert_unit(self):
        c0 = self.constant_term()
        if not c0:
            raise DivisionByNonUnit("constant term vanishes")
        inv0 = c0.inverse() if isinstance(c0, Eisenstein) else Fraction(1) / c0
        h = 1 - self.scale(inv0)
        result = QXSeries.const(self.xvars, self.x_order, self.q_order, 1)
        power = result
        for _ in range(self.x_order + self.q_order + 2):
            power = power * h
            if power.is_zero():
                break
            result = result + power
        return result.scale(inv0)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.invert_unit()

    def exp(self):
        """exp of a series with vanishing constant term."""
        if self.constant_term():
            raise ValueError("exp needs a vanishing constant term")
        result = QXSeries.const(self.xvars, self.x_order, self.q_order, 1)
        power = result
        for n in range(1, self.x_order + self.q_order + 2):
            power = (power * self).scale(Fraction(1, n))
            if power.is_zero():
                break
            result = result + power
        return result

    def items_sorted(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0][0]), kv[0][1], tuple(-x for x in kv[0][0])))

    def to_json(self):
        def comp(c):
            if isinstance(c, Eisenstein):
                a, b = c.a, c.b
            else:
                a, b = c, 0
            return {"a": str(Fraction(a)), "b": str(Fraction(b))}

        coeffs = {}
        for (e, j), c in self.items_sorted():
            xkey = str(e[0]) if len(e) == 1 else "(" + ",".join(map(str, e)) + ")"
            coeffs[f"{xkey},{j}"] = comp(c)
        return {
            "field": self.field,
            "x_variables": list(self.xvars),
            "x_order": self.x_order,
            "q_order": self.q_order,
            "coefficients": coeffs,
        }

    def __str__(self):
        parts = []
        for (e, j), c in self.items_sorted():
            mono = "*".join(
                [f"{v}^{k}" if k > 1 else v for v, k in zip(self.xvars, e) if k]
                + ([f"q^{j}" if j > 1 else "q"] if j else []))
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O({','.join(self.xvars)})^{self.x_order + 1} + O(q^{self.q_order + 1})"

    __repr__ = __str__


# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _bernoulli_table(n):
    b = [Fraction(1)]
    for m in range(1, n + 1):
        b.append(-sum(comb(m + 1, j) * b[j] for j in range(m)) / (m + 1))
    return tuple(b)


def bernoulli(n):
    """B_n from sum_{j=0}^{n} binom(n+1, j) B_j = 0 (so B_1 = -1/2)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return _q(_bernoulli_table(n)[n])


def divisor_sum(k, n):
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def eisenstein_G(weight, q_order, xvars=("x",), x_order=0):
    """G_{2k} = -B_{2k}/(4k) + sum_{n>=1} sigma_{2k-1}(n) q^n, as a q-series."""
    if weight < 2 or weight % 2:
        raise ValueError("weight must be an even integer >= 2")
    k = weight // 2
    zero = (0,) * len(tuple(xvars))
    terms = {(zero, 0): -Fraction(bernoulli(weight)) / (4 * k)}
    for n in range(1, q_order + 1):
        terms[zero, n] = divisor_sum(weight - 1, n)
    return QXSeries(xvars, x_order, q_order, terms)


def _exp_x(xvars, var, x_order, q_order, scale=1):
    """exp(scale * var) truncated in x."""
    xvars = tuple(xvars)
    i = xvars.index(var)
    terms = {}
    for n in range(x_order + 1):
        e = [0] * len(xvars)
        e[i] = n
        terms[tuple(e), 0] = Fraction(scale) ** n / factorial(n) if not isinstance(scale, Eisenstein) \
            else scale ** n * Fraction(1, factorial(n))
    return QXSeries(xvars, x_order, q_order, terms)


def _q_denominator(xvars, x_order, q_order):
    """prod_{n>=1} (1 - q^n)^2 through q^q_order."""
    result = QXSeries.const(xvars, x_order, q_order, 1)
    for n in range(1, q_order + 1):
        f = 1 - QXSeries.q_monomial(xvars, x_order, q_order, n)
        result = result * f * f
    return result


def phi_product(x_order, q_order, shift=None, var="x", xvars=None):
    """Phi(tau, x + s) = (e^{(x+s)/2} - e^{-(x+s)/2}) prod_n (1-q^n e^{x+s})(1-q^n e^{-x-s}) / (1-q^n)^2.

    ``shift`` is ``None``, ``"-omega"`` or ``"omega"``.
    """
    xvars = tuple(xvars or (var,))
    h = SHIFTS[shift]
    h_inv = h.inverse() if isinstance(h, Eisenstein) else Fraction(1, h)
    e_half = _exp_x(xvars, var, x_order, q_order, Fraction(1, 2))
    e_mhalf = _exp_x(xvars, var, x_order, q_order, Fraction(-1, 2))
    e_pos = _exp_x(xvars, var, x_order, q_order, 1).scale(h * h)
    e_neg = _exp_x(xvars, var, x_order, q_order, -1).scale(h_inv * h_inv)
    result = e_half.scale(h) - e_mhalf.scale(h_inv)
    for n in range(1, q_order + 1):
        qn = QXSeries.q_monomial(xvars, x_order, q_order, n)
        result = result * (1 - qn * e_pos) * (1 - qn * e_neg)
    return result * _q_denominator(xvars, x_order, q_order).invert_unit()


def phi_exp(x_order, q_order, var="x", eisenstein=None):
    """x * exp(-sum_k 2/(2k)! G_{2k}(tau) x^{2k}).

    ``eisenstein`` optionally maps a weight 2k to a replacement q-series for
    G_{2k} (anything :func:`eisenstein_G` would return).
    """
    xvars = (var,)
    exponent = QXSeries(xvars, x_order, q_order)
    x = QXSeries.var(xvars, x_order, q_order, var)
    for k in range(1, x_order // 2 + 1):
        if eisenstein is not None:
            g = eisenstein(2 * k)
        else:
            g = eisenstein_G(2 * k, q_order, xvars, x_order)
        x2k = QXSeries(xvars, x_order, q_order, {((2 * k,), 0): Fraction(-2, factorial(2 * k))})
        exponent = exponent + g * x2k
    return x * exponent.exp()


def phi_at_shift(q_order, shift="-omega", xvars=("x",), x_order=0):
    """Phi(tau, s) as a q-series (the x-degree 0 part of the shifted product)."""
    return phi_product(x_order, q_order, shift, var=xvars[0], xvars=xvars).at_zero()


def psi_series(x_order, q_order, var="z"):
    """psi(z) = Phi(tau, -omega) / Phi(tau, z - omega)."""
    shifted = phi_product(x_order, q_order, "-omega", var=var)
    return shifted.at_zero() * shifted.invert_unit()


def level3_genus_x(x_order, q_order, var="z"):
    """x(z) = Phi(tau, z) Phi(tau, -omega) / Phi(tau, z - omega)."""
    return phi_product(x_order, q_order, None, var=var) * psi_series(x_order, q_order, var)


def character_product(roots, x_order, q_order):
    """prod_i Phi(tau, x_i - omega) / Phi(tau, -omega) over the formal roots.

    ``roots`` is a list of variable names (or an int m for x1..xm).
    """
    if isinstance(roots, int):
        roots = [f"x{i}" for i in range(1, roots + 1)]
    xvars = tuple(roots)
    result = QXSeries.const(xvars, x_order, q_order, 1)
    if not xvars:
        return QXSeries.const(("x",), x_order, q_order, 1)
    single = psi_series(x_order, q_order, var="x").invert_unit()
    for v in xvars:
        result = result * single.rename(xvars, {"x": v})
    return result
