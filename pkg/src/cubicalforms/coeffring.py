"""Exact coefficients: scalars and sparse multivariate polynomials.

Scalars are plain Python ``int`` and ``Fraction`` values, plus two extra
types defined here:

* :class:`TwoLocal` -- rationals with odd denominator, i.e. elements of the
  ring Z localized at 2;
* :class:`Eisenstein` -- elements ``a + b*zeta`` of Q(zeta_3) with
  ``zeta**2 == -1 - zeta``.

Polynomials are stored sparsely as ``{exponent tuple: coefficient}`` over an
ordered tuple of variable names.  The raw-dict helpers (``padd``, ``pmul``,
...) are used directly by the series kernel for speed; :class:`Poly` is the
immutable public wrapper.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from .errors import NonIntegerCoefficient, NotDivisible, NotTwoLocallyInvertible, VariableMismatch

__all__ = [
    "TwoLocal", "Eisenstein", "ZETA", "scalar_arith", "Poly", "parse_poly",
    "reduce_mod_ideal", "two_adic_valuation",
]


def two_adic_valuation(n):
    """Largest e with 2**e dividing the nonzero rational ``n``."""
    n = Fraction(n)
    if n == 0:
        raise ValueError("valuation of zero")
    num, den = n.numerator, n.denominator
    v = 0
    while num % 2 == 0:
        num //= 2
        v += 1
    while den % 2 == 0:
        den //= 2
        v -= 1
    return v


class TwoLocal(Fraction):
    """A rational number with odd denominator."""

    __slots__ = ()

    def __new__(cls, numerator=0, denominator=None):
        self = super().__new__(cls, numerator, denominator)
        if self.denominator % 2 == 0:
            raise NotTwoLocallyInvertible(f"{Fraction(self)} is not 2-local")
        return self

    def _wrap(self, value):
        if isinstance(value, Fraction) and value.denominator % 2:
            return TwoLocal(value)
        return value

    def __add__(self, other):
        return self._wrap(Fraction.__add__(self, other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(Fraction.__sub__(self, other))

    def __rsub__(self, other):
        return self._wrap(Fraction.__rsub__(self, other))

    def __mul__(self, other):
        return self._wrap(Fraction.__mul__(self, other))

    __rmul__ = __mul__

    def __neg__(self):
        return TwoLocal(-self.numerator, self.denominator)

    def __truediv__(self, other):
        if isinstance(other, Rational) and other != 0 and Fraction(other).numerator % 2 == 0:
            raise NotTwoLocallyInvertible(f"{other} has even numerator")
        return self._wrap(Fraction.__truediv__(self, other))

    def __rtruediv__(self, other):
        return TwoLocal(other) / self

    def inverse(self):
        if self == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.numerator % 2 == 0:
            raise NotTwoLocallyInvertible(f"{Fraction(self)} has even numerator")
        return TwoLocal(self.denominator, self.numerator)

    def __repr__(self):
        return f"TwoLocal({self.numerator}, {self.denominator})"


def _q(x):
    """Normalize a rational to int when integral."""
    if isinstance(x, Fraction) and not isinstance(x, TwoLocal) and x.denominator == 1:
        return x.numerator
    return x


class Eisenstein:
    """``a + b*zeta`` with rational ``a``, ``b`` and ``zeta = exp(2*pi*i/3)``."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = _q(Fraction(a))
        self.b = _q(Fraction(b))

    @staticmethod
    def _coerce(other):
        if isinstance(other, Eisenstein):
            return other
        if isinstance(other, (int, Fraction)):
            return Eisenstein(other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Eisenstein(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return Eisenstein(-self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Eisenstein(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Eisenstein(self.a * other, self.b * other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.a, self.b, other.a, other.b
        bd = b * d
        return Eisenstein(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def norm(self):
        """Field norm a^2 - ab + b^2."""
        return _q(Fraction(self.a * self.a - self.a * self.b + self.b * self.b))

    def conjugate(self):
        # zeta -> zeta^2 = -1 - zeta
        return Eisenstein(self.a - self.b, -self.b)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(zeta3)")
        c = self.conjugate()
        return Eisenstein(Fraction(c.a) / n, Fraction(c.b) / n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Eisenstein._coerce(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Eisenstein(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __complex__(self):
        return complex(float(self.a) - 0.5 * float(self.b), float(self.b) * 3 ** 0.5 / 2)

    def __repr__(self):
        return f"Eisenstein({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*zeta"
        return f"({self.a} + {self.b}*zeta)"


ZETA = Eisenstein(0, 1)


def scalar_arith(op, a, b=None):
    """Apply ``op`` in {'add', 'mul', 'neg', 'inv'} exactly.

    The result lives in the common variant of the inputs: int promotes to
    rational, 2-local stays 2-local when combined with integers, anything
    combined with an Eisenstein number is Eisenstein.
    """
    if op == "neg":
        return _q(-a) if not isinstance(a, Eisenstein) else -a
    if op == "inv":
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if isinstance(a, (TwoLocal, Eisenstein)):
            return a.inverse()
        return _q(Fraction(1) / a)
    if b is None:
        raise TypeError(f"{op} needs two operands")
    if isinstance(b, TwoLocal) and isinstance(a, int):
        a, b = b, a
    if op == "add":
        return _q(a + b)
    if op == "mul":
        return _q(a * b)
    raise ValueError(f"unknown scalar op {op!r}")


# ---------------------------------------------------------------------------
# raw sparse-dict polynomial helpers

def padd(p, q):
    r = dict(p)
    for e, c in q.items():
        s = r.get(e, 0) + c
        if s:
            r[e] = s
        else:
            r.pop(e, None)
    return r


def padd_into(acc, q, scale=1):
    """acc += scale * q, in place."""
    for e, c in q.items():
        s = acc.get(e, 0) + scale * c
        if s:
            acc[e] = s
        else:
            acc.pop(e, None)


def pneg(p):
    return {e: -c for e, c in p.items()}


def pscale(p, c):
    if not c:
        return {}
    return {e: v * c for e, v in p.items()}


def pmul(p, q):
    if len(p) > len(q):
        p, q = q, p
    r = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            s = r.get(e, 0) + c1 * c2
            if s:
                r[e] = s
            else:
                del r[e]
    return r


def pdivide_exact(num, den):
    """Exact quotient num/den of sparse dicts (over Q); raises NotDivisible."""
    if not den:
        raise ZeroDivisionError("division by zero polynomial")
    lt = max(den)
    lc = den[lt]
    inv_lc = Fraction(1) / lc if not isinstance(lc, Eisenstein) else lc.inverse()
    rem = dict(num)
    quo = {}
    while rem:
        m = max(rem)
        if any(a < b for a, b in zip(m, lt)):
            raise NotDivisible(f"leading monomial {m} not divisible by {lt}")
        e = tuple(a - b for a, b in zip(m, lt))
        c = _q(rem[m] * inv_lc) if not isinstance(rem[m], Eisenstein) else rem[m] * inv_lc
        quo[e] = c
        for de, dc in den.items():
            k = tuple(a + b for a, b in zip(e, de))
            s = rem.get(k, 0) - c * dc
            if s:
                rem[k] = _q(s) if isinstance(s, Fraction) else s
            else:
                rem.pop(k, None)
    return quo


def _normalize(terms):
    out = {}
    for e, c in terms.items():
        if c:
            out[e] = _q(c) if isinstance(c, Fraction) else c
    return out


# ---------------------------------------------------------------------------
# text form

def _scalar_text(c):
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}" if c.denominator != 1 else str(c.numerator)
    return str(c)


def monomial_text(variables, exps):
    parts = []
    for v, e in zip(variables, exps):
        if e == 1:
            parts.append(v)
        elif e:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def terms_text(items):
    """Join ``(scalar, monomial string)`` pairs in the canonical signed style.

    A leading negative unit is written ``-1*m``; later negative terms use
    `` - ``.
    """
    out = []
    for i, (c, mono) in enumerate(items):
        negative = not isinstance(c, Eisenstein) and c < 0
        mag = -c if negative else c
        if not mono:
            body = _scalar_text(mag)
        elif mag == 1 and not (negative and i == 0):
            body = mono
        else:
            body = f"{_scalar_text(mag)}*{mono}"
        if i == 0:
            out.append(("-" if negative else "") + body)
        else:
            out.append((" - " if negative else " + ") + body)
    return "".join(out) if out else "0"


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+))?$")


def parse_terms(text):
    """Parse a signed sum of ``c*v^e*...`` products into (scalar, {var: exp}) pairs."""
    text = text.strip()
    if text in ("", "0"):
        return []
    if text[0] not in "+-":
        text = "+" + text
    pieces = _TERM_SPLIT.split(text)[1:]
    result = []
    for sign, body in zip(pieces[0::2], pieces[1::2]):
        coeff = Fraction(1)
        powers = {}
        for factor in body.split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in {body!r}")
            if factor[0].isdigit():
                coeff *= Fraction(factor)
                continue
            m = _FACTOR.match(factor)
            if not m:
                raise ValueError(f"cannot parse factor {factor!r}")
            powers[m.group(1)] = powers.get(m.group(1), 0) + int(m.group(2) or 1)
        result.append((_q(-coeff if sign == "-" else coeff), powers))
    return result


# ---------------------------------------------------------------------------

def _sort_key(e):
    return (-sum(e), tuple(-x for x in e))


class Poly:
    """Immutable sparse polynomial over an ordered variable tuple."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        n = len(self.variables)
        terms = _normalize(terms or {})
        for e in terms:
            if len(e) != n:
                raise VariableMismatch(f"exponent {e} does not match variables {self.variables}")
        self.terms = terms
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, variables):
        return cls(variables)

    @classmethod
    def const(cls, variables, c):
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def var(cls, variables, name):
        variables = tuple(variables)
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def gens(cls, variables):
        return tuple(cls.var(variables, v) for v in variables)

    def _check(self, other):
        if isinstance(other, Poly):
            if other.variables != self.variables:
                raise VariableMismatch(f"{self.variables} != {other.variables}")
            return other
        if isinstance(other, (int, Fraction, Eisenstein)):
            return Poly.const(self.variables, other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Poly(self.variables, padd(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.variables, pneg(self.terms))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Poly(self.variables, padd(self.terms, pneg(other.terms)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Poly(self.variables, pmul(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction, Eisenstein)):
            return self.terms == Poly.const(self.variables, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.variables), 0)

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def coefficient(self, exps):
        if isinstance(exps, dict):
            exps = tuple(exps.get(v, 0) for v in self.variables)
        return self.terms.get(tuple(exps), 0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))

    def subs(self, values):
        """Substitute ``{name: Poly or scalar}``; other variables stay symbolic."""
        result = Poly.zero(self.variables)
        gens = {v: Poly.var(self.variables, v) for v in self.variables}
        for v, val in values.items():
            if v not in gens:
                raise VariableMismatch(f"unknown variable {v}")
            gens[v] = val if isinstance(val, Poly) else Poly.const(self.variables, val)
        for e, c in self.terms.items():
            term = Poly.const(self.variables, c)
            for v, k in zip(self.variables, e):
                if k:
                    term = term * gens[v] ** k
            result = result + term
        return result

    def with_variables(self, variables):
        """Re-embed into a larger (or reordered) variable tuple."""
        variables = tuple(variables)
        idx = []
        for v in self.variables:
            if v not in variables:
                raise VariableMismatch(f"{v} missing from {variables}")
            idx.append(variables.index(v))
        terms = {}
        for e, c in self.terms.items():
            new = [0] * len(variables)
            for i, k in zip(idx, e):
                new[i] = k
            terms[tuple(new)] = c
        return Poly(variables, terms)

    def exact_divide(self, other):
        other = self._check(other)
        return Poly(self.variables, pdivide_exact(self.terms, other.terms))

    def map_coefficients(self, f):
        return Poly(self.variables, {e: f(c) for e, c in self.terms.items()})

    def __str__(self):
        return terms_text([(c, monomial_text(self.variables, e)) for e, c in self.sorted_terms()])

    def __repr__(self):
        return f"Poly({self.variables!r}, {str(self)!r})"


def parse_poly(text, variables):
    """Inverse of ``str(Poly)``."""
    variables = tuple(variables)
    terms = {}
    for c, powers in parse_terms(text):
        e = [0] * len(variables)
        for v, k in powers.items():
            if v not in variables:
                raise VariableMismatch(f"unknown variable {v!r}")
            e[variables.index(v)] = k
        e = tuple(e)
        terms[e] = terms.get(e, 0) + c
    return Poly(variables, terms)


def reduce_scalar_mod(c, prime):
    """Image of a p-integral rational in {0, ..., prime-1}."""
    if isinstance(c, Eisenstein):
        raise NonIntegerCoefficient("cannot reduce an Eisenstein coefficient mod a prime")
    c = Fraction(c)
    if c.denominator % prime == 0:
        raise NonIntegerCoefficient(f"{c} is not {prime}-integral")
    return (c.numerator * pow(c.denominator, -1, prime)) % prime


def reduce_terms(terms, variables, prime, killed_vars):
    """Raw-dict form of :func:`reduce_mod_ideal`."""
    killed = [variables.index(v) for v in killed_vars if v in variables]
    out = {}
    for e, c in terms.items():
        if any(e[i] for i in killed):
            continue
        if prime is not None:
            c = reduce_scalar_mod(c, prime)
        if c:
            out[e] = c
    return out


def reduce_mod_ideal(p, prime=None, killed_vars=()):
    """Reduce ``p`` modulo the ideal generated by ``prime`` and ``killed_vars``.

    Monomials containing a killed variable are dropped; remaining
    coefficients are mapped into ``{0, ..., prime-1}``.  Coefficients with a
    denominator divisible by ``prime`` raise :class:`NonIntegerCoefficient`.
    """
    for v in killed_vars:
        if v not in p.variables:
            raise VariableMismatch(f"{v} is not a variable of {p.variables}")
    if prime is not None and (prime < 2 or any(prime % d == 0 for d in range(2, int(prime ** 0.5) + 1))):
        raise ValueError(f"{prime} is not a prime")
    return Poly(p.variables, reduce_terms(p.terms, p.variables, prime, killed_vars))
