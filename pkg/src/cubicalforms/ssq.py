"""The C_2 homotopy-fixed-point spectral sequence for TMF_1(3) in a finite window.

E_1 = Z_(2)[a, u1, u2][sigma^{+-1}] with ``u1 = v1 sigma`` and ``u2 = v2 sigma^3``.
A monomial ``a^j u1^p u2^m sigma^k`` is stored as the tuple ``(j, k, p, m)``;
its degree is ``k - p - 3m`` (integral part) plus ``(j - k - p - 3m) alpha``.
The power ``j`` of ``a`` is the filtration.

Differentials are fixed on powers of sigma and extended by

    d(e f) = d(e) f + (-1)^w(e) e d(f),

where ``w`` is the exponent of sigma.  ``a``, ``u1`` and ``u2`` have
weight 0 (they are invariant under the C_2 action) and are cycles, so
``d(M sigma^k) = M d(sigma^k)``.  The generator rules

    d1(sigma^-1) = 2a,  d3(sigma^-2) = u1 a^3,  d7(sigma^-4) = u2 a^7

then give ``d1(sigma^k) = 2a sigma^{k+1}`` for odd ``k`` (zero for even
``k``), ``d3(sigma^{2q}) = -q u1 a^3 sigma^{2q+2}`` and
``d7(sigma^{4q}) = -q u2 a^7 sigma^{4q+4}``.  On the remaining powers d3
and d7 are computed from ``sigma^{rem} sigma^{Pq}`` with ``d(sigma^{rem}) = 0``;
those values only matter modulo boundaries.

Pages are subquotients Z_r / B_r of the E_1 lattice, computed one bidegree
at a time.  Every differential preserves the alpha-part ``l``, so each row
``l`` is an independent cochain complex in the integral degree.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import lattice
from .coeffring import two_adic_valuation
from .errors import MalformedElement, WindowTooSmall

__all__ = [
    "Degree", "PageElement", "Window", "SpectralSequence", "d_r", "page_homology",
    "e_infinity_chart", "PERMANENT_CYCLES", "DEFAULT_WINDOW", "render_ascii_chart",
    "filtration_zero_oracle", "filtration_zero_check", "leibniz_defect", "suite", "parse_element",
]

# page index -> (differential, next page); E3 = E2, E5 = E6 = E7 = E4, E_inf = E8
PAGE_STEPS = ((1, 1, 2), (2, 3, 4), (4, 7, 8))
DIFFERENTIALS = (1, 3, 7)


def _page_index(page):
    if page in ("inf", "infinity", None):
        return 8
    if page < 1:
        raise ValueError("pages start at 1")
    if page == 1:
        return 1
    if page < 4:
        return 2
    if page < 8:
        return 4
    return 8


@dataclass(frozen=True, order=True)
class Degree:
    """The degree k + l*alpha."""

    k: int
    l: int

    def __add__(self, other):
        return Degree(self.k + other.k, self.l + other.l)

    def __sub__(self, other):
        return Degree(self.k - other.k, self.l - other.l)

    def __mul__(self, n):
        return Degree(self.k * n, self.l * n)

    __rmul__ = __mul__

    def __str__(self):
        if self.l == 0:
            return str(self.k)
        sign = "+" if self.l > 0 else "-"
        return f"{self.k}{sign}{abs(self.l)}alpha"


DEGREE_TABLE = {
    "a": Degree(0, 1),
    "sigma": Degree(1, -1),
    "u1": Degree(-1, -1),
    "u2": Degree(-3, -3),
    "v1": Degree(-2, 0),
    "v2": Degree(-6, 0),
}


def mono_degree(mono):
    j, k, p, m = mono
    return Degree(k - p - 3 * m, j - k - p - 3 * m)


def _check_scalar(c):
    c = Fraction(c)
    if c and two_adic_valuation(c) < 0:
        raise MalformedElement(f"coefficient {c} is not 2-local")
    return c


class PageElement:
    """A Z_(2)-combination of monomials a^j u1^p u2^m sigma^k."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for mono, c in (terms or {}).items():
            if len(mono) != 4 or not all(isinstance(x, int) for x in mono):
                raise MalformedElement(f"bad monomial {mono}")
            j, _, p, m = mono
            if j < 0 or p < 0 or m < 0:
                raise MalformedElement(f"negative exponent in {mono}")
            c = _check_scalar(c)
            if c:
                clean[tuple(mono)] = clean.get(tuple(mono), 0) + c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def monomial(cls, j=0, k=0, p=0, m=0, c=1):
        return cls({(j, k, p, m): c})

    @classmethod
    def one(cls):
        return cls.monomial()

    @classmethod
    def a(cls):
        return cls.monomial(j=1)

    @classmethod
    def sigma(cls, k=1):
        return cls.monomial(k=k)

    @classmethod
    def u1(cls):
        return cls.monomial(p=1)

    @classmethod
    def u2(cls):
        return cls.monomial(m=1)

    @classmethod
    def a1(cls):
        """a1 = u1 sigma^-1."""
        return cls.monomial(k=-1, p=1)

    @classmethod
    def a3(cls):
        """a3 = u2 sigma^-3."""
        return cls.monomial(k=-3, m=1)

    @classmethod
    def from_vector(cls, vec):
        return cls(vec)

    def to_vector(self):
        return dict(self.terms)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, PageElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return PageElement(out)

    def __neg__(self):
        return PageElement({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PageElement({k: c * other for k, c in self.terms.items()})
        out = {}
        for (j1, k1, p1, m1), c1 in self.terms.items():
            for (j2, k2, p2, m2), c2 in other.terms.items():
                key = (j1 + j2, k1 + k2, p1 + p2, m1 + m2)
                out[key] = out.get(key, 0) + c1 * c2
        return PageElement(out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n):
        if n < 0:
            if len(self.terms) != 1:
                raise MalformedElement("only monomials in sigma can be inverted")
            (j, k, p, m), c = next(iter(self.terms.items()))
            if j or p or m or abs(c) != 1:
                raise MalformedElement("only +-sigma^k is invertible")
            return PageElement.monomial(k=k * n, c=Fraction(c) ** n)
        result = PageElement.one()
        for _ in range(n):
            result = result * self
        return result

    def degrees(self):
        return {mono_degree(mono) for mono in self.terms}

    @property
    def degree(self):
        degs = self.degrees()
        if len(degs) != 1:
            raise MalformedElement("element is not homogeneous")
        return next(iter(degs))

    @property
    def filtration(self):
        return min(j for j, _, _, _ in self.terms) if self.terms else None

    def weight_parity(self):
        ws = {k % 2 for _, k, _, _ in self.terms}
        if len(ws) > 1:
            raise MalformedElement("element mixes sigma-weights")
        return ws.pop() if ws else 0

    def d(self, r):
        return d_r(r, self)

    def e1_form(self):
        """Rewrite in TMF_1(3)[sigma^{+-1}, a] notation (a1 = u1/sigma, a3 = u2/sigma^3)."""
        parts = []
        for (j, k, p, m), c in sorted(self.terms.items()):
            parts.append((c, _mono_text([("a1", p), ("a3", m), ("a", j), ("sigma", k + p + 3 * m)])))
        return _join(parts)

    def __str__(self):
        parts = [(c, _mono_text([("a", j), ("u1", p), ("u2", m), ("sigma", k)]))
                 for (j, k, p, m), c in sorted(self.terms.items())]
        return _join(parts)

    __repr__ = __str__


def _mono_text(factors):
    out = []
    for name, e in factors:
        if e == 1:
            out.append(name)
        elif e:
            out.append(f"{name}^{e}")
    return "*".join(out) or "1"


def _join(parts):
    if not parts:
        return "0"
    text = ""
    for i, (c, mono) in enumerate(parts):
        neg = c < 0
        mag = -c if neg else c
        body = mono if mag == 1 else (str(mag) if mono == "1" else f"{mag}*{mono}")
        if i == 0:
            text = ("-" if neg else "") + body
        else:
            text += (" - " if neg else " + ") + body
    return text


_FACTOR = re.compile(r"^(a|u1|u2|sigma)(?:\^(-?\d+))?$")


def parse_element(text):
    """Inverse of ``str(PageElement)``; also accepts a1 and a3."""
    text = text.strip()
    if text == "0":
        return PageElement()
    pieces = re.split(r"(?<!\^)\s*([+-])\s*", text)
    if pieces[0] == "":
        pieces = pieces[1:]
    else:
        pieces = ["+"] + pieces
    total = PageElement()
    for sign, term in zip(pieces[::2], pieces[1::2]):
        value = PageElement.one() * (-1 if sign == "-" else 1)
        for f in term.split("*"):
            f = f.strip()
            if re.fullmatch(r"\d+(/\d+)?", f):
                value = value * Fraction(f)
                continue
            mm = re.fullmatch(r"(a1|a3)(?:\^(\d+))?", f)
            if mm:
                g = PageElement.a1() if mm.group(1) == "a1" else PageElement.a3()
                value = value * g ** int(mm.group(2) or 1)
                continue
            mm = _FACTOR.match(f)
            if not mm:
                raise MalformedElement(f"cannot parse factor {f!r}")
            e = int(mm.group(2) or 1)
            name = mm.group(1)
            if name == "sigma":
                value = value * PageElement.sigma(e)
            else:
                if e < 0:
                    raise MalformedElement(f"negative power of {name}")
                g = {"a": PageElement.a(), "u1": PageElement.u1(), "u2": PageElement.u2()}[name]
                value = value * g ** e
        total = total + value
    return total


# ---------------------------------------------------------------------------
# differentials

def _d_mono(r, mono):
    """d_r of a single monomial, as ``(target, factor)`` or None."""
    j, k, p, m = mono
    if r == 1:
        if k % 2:
            return (j + 1, k + 1, p, m), 2
        return None
    if r == 3:
        q, rem = divmod(k, 2)
        f = (-1) ** rem * -q
        return ((j + 3, k + 2, p + 1, m), f) if f else None
    if r == 7:
        q, rem = divmod(k, 4)
        f = (-1) ** rem * -q
        return ((j + 7, k + 4, p, m + 1), f) if f else None
    return None


def d_r(r, e):
    """The differential d_r on a page element (zero for r not in 1, 3, 7)."""
    if not isinstance(e, PageElement):
        raise MalformedElement(f"{e!r} is not a PageElement")
    if r < 1:
        raise MalformedElement(f"no differential d_{r}")
    out = {}
    for mono, c in e.terms.items():
        t = _d_mono(r, mono)
        if t is not None:
            out[t[0]] = out.get(t[0], 0) + c * t[1]
    return PageElement(out)


DIFFERENTIAL_DEGREE = Degree(1, 0)


# ---------------------------------------------------------------------------
# windows and pages

@dataclass(frozen=True)
class Window:
    """Bounds |k| <= kmax, a-power <= filtration_max, u2-power <= u2_max, u1-power <= u1_max."""

    kmax: int = 48
    filtration_max: int = 16
    u2_max: int = 8
    u1_max: int = 16

    def __post_init__(self):
        for name in ("kmax", "filtration_max", "u2_max", "u1_max"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    def contains(self, mono):
        j, k, p, m = mono
        return (0 <= j <= self.filtration_max and abs(k) <= self.kmax
                and 0 <= p <= self.u1_max and 0 <= m <= self.u2_max)

    def row(self, l):
        """Monomials of alpha-part ``l``, grouped by integral degree."""
        out = {}
        for j in range(self.filtration_max + 1):
            for p in range(self.u1_max + 1):
                for m in range(self.u2_max + 1):
                    k = j - p - 3 * m - l
                    if abs(k) <= self.kmax:
                        out.setdefault(k - p - 3 * m, []).append((j, k, p, m))
        return {n: sorted(v) for n, v in sorted(out.items())}

    def rows(self):
        """All alpha-parts l that occur in the window."""
        lo = -self.kmax - self.u1_max - 3 * self.u2_max
        hi = self.filtration_max + self.kmax
        return range(lo, hi + 1)

    def as_dict(self):
        return {"kmax": self.kmax, "filtration_max": self.filtration_max,
                "u2_max": self.u2_max, "u1_max": self.u1_max}


DEFAULT_WINDOW = Window()


class _Row:
    __slots__ = ("l", "basis", "Z", "B")

    def __init__(self, l):
        self.l = l
        self.basis = {}
        self.Z = {}
        self.B = {}


class SpectralSequence:
    """Pages E_1, E_2 (= E_3), E_4 (= E_5..E_7) and E_8 (= E_inf) inside a window."""

    def __init__(self, window=DEFAULT_WINDOW):
        self.window = window
        self._rows = {}

    # -- leak bookkeeping: monomials whose differentials cross the window edge
    def leaky(self, mono, page="inf"):
        """True if some d_r (r below ``page``) into or out of ``mono`` leaves the window."""
        top = _page_index(page)
        w = self.window
        for r in DIFFERENTIALS:
            if r >= top:
                break
            t = _d_mono(r, mono)
            if t is not None and not w.contains(t[0]):
                return True
            j, k, p, m = mono
            shift = {1: 1, 3: 2, 7: 4}[r]
            src = (j - r, k - shift, p - (r == 3), m - (r == 7))
            if src[0] >= 0 and src[2] >= 0 and src[3] >= 0 and not w.contains(src):
                s = _d_mono(r, src)
                if s is not None and s[0] == mono:
                    return True
        return False

    def _d_window(self, r, vec):
        out = {}
        for mono, c in vec.items():
            t = _d_mono(r, mono)
            if t is not None and self.window.contains(t[0]):
                s = out.get(t[0], 0) + c * t[1]
                if s:
                    out[t[0]] = s
                else:
                    out.pop(t[0])
        return out

    def row(self, l):
        if l in self._rows:
            return self._rows[l]
        data = _Row(l)
        data.basis = self.window.row(l)
        degrees = sorted(data.basis)
        data.Z[1] = {n: [{mono: Fraction(1)} for mono in data.basis[n]] for n in degrees}
        data.B[1] = {n: [] for n in degrees}
        for page, r, nxt in PAGE_STEPS:
            Z, B = data.Z[page], data.B[page]
            Znew, Bnew = {}, {n: list(B[n]) for n in degrees}
            for n in degrees:
                images = [self._d_window(r, z) for z in Z[n]]
                target_b = B.get(n + 1, [])
                rel = images + [{k: -c for k, c in b.items()} for b in target_b]
                keep = []
                for c in lattice.kernel(rel):
                    part = {i: x for i, x in c.items() if i < len(images)}
                    v = lattice.combine(part, Z[n])
                    if v:
                        keep.append(v)
                Znew[n] = [row for _, row in lattice.echelon(keep)]
                if n + 1 in Bnew:
                    Bnew[n + 1].extend(im for im in images if im)
            data.Z[nxt] = Znew
            data.B[nxt] = {n: [row for _, row in lattice.echelon(Bnew[n])] for n in degrees}
        self._rows[l] = data
        return data

    def _locate(self, e):
        deg = e.degree
        for mono in e.terms:
            if not self.window.contains(mono):
                raise WindowTooSmall(f"{mono} lies outside the window")
        return self.row(deg.l), deg.k

    def _require_determinate(self, e, page):
        bad = [mono for mono in e.terms if self.leaky(mono, page)]
        if bad:
            raise WindowTooSmall(f"differentials at {bad[0]} leave the window")

    def is_cycle(self, e, page="inf"):
        """Does ``e`` lie in Z_page, i.e. survive every differential below ``page``?"""
        row, n = self._locate(e)
        self._require_determinate(e, page)
        return lattice.contains(lattice.echelon(row.Z[_page_index(page)][n]), e.terms)

    def is_boundary(self, e, page="inf"):
        row, n = self._locate(e)
        self._require_determinate(e, page)
        return lattice.contains(lattice.echelon(row.B[_page_index(page)][n]), e.terms)

    def survives(self, e, page="inf"):
        """Nonzero class on the page: a cycle that is not a boundary."""
        return self.is_cycle(e, page) and not self.is_boundary(e, page)

    def class_order(self, e, page, max_exponent=64):
        """Additive order of the class of ``e`` on the page (None for infinite)."""
        if not self.is_cycle(e, page):
            raise ValueError(f"{e} is not a cycle on E_{page}")
        row, n = self._locate(e)
        bb = lattice.echelon(row.B[_page_index(page)][n])
        for v in range(max_exponent + 1):
            if lattice.contains(bb, {k: c * 2 ** v for k, c in e.terms.items()}):
                return 2 ** v
        return None

    def generators(self, l, n, page="inf"):
        """``[(PageElement, order, determinate)]`` generating E_page in degree n + l alpha."""
        row = self.row(l)
        idx = _page_index(page)
        if n not in row.basis:
            return []
        out = []
        for vec, order in lattice.quotient(row.Z[idx][n], row.B[idx][n]):
            elt = PageElement(vec)
            det = not any(self.leaky(mono, page) for mono in vec)
            out.append((elt, order, det))
        out.sort(key=lambda g: (g[0].filtration, str(g[0])))
        return out

    def filtration_part(self, l, n, j, page):
        """(Z ∩ F_j, B ∩ F_j): the lattices supported on a-power exactly ``j``."""
        row = self.row(l)
        idx = _page_index(page)
        coords = [mono for mono in row.basis.get(n, []) if mono[0] == j]
        z = lattice.intersect_coordinates(row.Z[idx].get(n, []), coords)
        b = lattice.intersect_coordinates(row.B[idx].get(n, []), coords)
        return z, b

    # -- checks
    def d_squared_failures(self, r, rows=None):
        """Basis elements x of Z_r with d_r(d_r x) not in B_r (where decidable)."""
        idx = _page_index(r)
        failures = []
        checked = 0
        for l in (rows if rows is not None else self.window.rows()):
            row = self.row(l)
            for n, zs in row.Z[idx].items():
                bb = None
                for z in zs:
                    x = PageElement(z)
                    dd = d_r(r, d_r(r, x))
                    if not all(self.window.contains(mono) for mono in dd.terms):
                        continue
                    if any(self.leaky(mono, r) for mono in z):
                        continue
                    if bb is None:
                        bb = lattice.echelon(row.B[idx].get(n + 2, []))
                    checked += 1
                    if dd and not lattice.contains(bb, dd.terms):
                        failures.append(x)
        return failures, checked


def d_squared_exact_zero(r, e):
    return d_r(r, d_r(r, e)).is_zero()


PERMANENT_CYCLES = {
    "a": PageElement.a(),
    "sigma^8": PageElement.sigma(8),
    "sigma^-8": PageElement.sigma(-8),
    "u1": PageElement.u1(),
    "u2": PageElement.u2(),
    "u2^3*sigma^-8": PageElement.monomial(k=-8, m=3),
}


def page_homology(r, window=DEFAULT_WINDOW, rows=(0,), ss=None):
    """The page after d_r, as ``{(n, l): [(generator, order, determinate)]}``."""
    if r not in DIFFERENTIALS:
        raise ValueError("nonzero differentials are d1, d3 and d7 only")
    ss = ss or SpectralSequence(window)
    nxt = {1: 2, 3: 4, 7: 8}[r]
    out = {}
    for l in rows:
        for n in ss.row(l).basis:
            gens = ss.generators(l, n, nxt)
            if gens:
                out[n, l] = gens
    return out


def filtration_zero_oracle(n, window=DEFAULT_WINDOW):
    """Invariants of a_i -> -a_i on Z_(2){a1^p a3^m : 2p + 6m = -n}, in u-notation.

    Computed by brute force: the kernel of (gamma - 1) on the monomial basis.
    """
    basis = []
    for m in range(window.u2_max + 1):
        rest = -n - 6 * m
        if rest < 0 or rest % 2:
            continue
        p = rest // 2
        if p <= window.u1_max and abs(p + 3 * m) <= window.kmax:
            basis.append((p, m))
    columns = []
    for p, m in basis:
        sign = (-1) ** (p + m)
        columns.append({(p, m): Fraction(sign - 1)} if sign != 1 else {})
    invariants = []
    for c in lattice.kernel(columns):
        vec = {}
        for i, x in c.items():
            p, m = basis[i]
            vec[(0, -p - 3 * m, p, m)] = x
        if vec:
            invariants.append(vec)
    return invariants


def e_infinity_chart(window=DEFAULT_WINDOW, l=0, ss=None):
    """Surviving E_inf generators in degrees n + l alpha (default: integral degrees)."""
    if window.filtration_max < 7 or window.kmax < 8 or window.u1_max < 1 or window.u2_max < 1:
        raise WindowTooSmall("the window cannot contain a d7 and its source")
    ss = ss or SpectralSequence(window)
    gens = []
    for n in ss.row(l).basis:
        for elt, order, det in ss.generators(l, n, "inf"):
            gens.append({
                "degree": [n, l],
                "stem": -n,
                "filtration": elt.filtration,
                "representative": str(elt),
                "order": "free" if order is None else order,
                "determinate": det,
            })
    gens.sort(key=lambda g: (g["stem"], g["filtration"], g["representative"]))
    return {"window": window.as_dict(), "row": l, "page": "E_infinity", "generators": gens}


def render_ascii_chart(chart):
    """Stems left to right, filtration bottom to top.

    ``Z`` free, ``2``/``4``/``8`` torsion of that order (``*`` larger),
    ``?`` contains a class the window cannot decide, ``.`` empty.
    """
    cells = {}
    for g in chart["generators"]:
        key = (g["stem"], g["filtration"])
        cells.setdefault(key, []).append(g)
    stems = [g["stem"] for g in chart["generators"] if g["determinate"]] or [0]
    lo, hi = min(stems), max(stems)
    top = chart["window"]["filtration_max"]

    def symbol(gs):
        if not gs:
            return "."
        if not all(g["determinate"] for g in gs):
            return "?"
        if any(g["order"] == "free" for g in gs):
            return "Z"
        order = max(g["order"] for g in gs)
        return str(order) if order < 10 else "*"

    lines = [f"E_infinity, row l = {chart['row']}, window {chart['window']}"]
    for j in range(top, -1, -1):
        row = "".join(f"{symbol(cells.get((s, j), [])):>3}" for s in range(lo, hi + 1))
        lines.append(f"{j:>3} |{row}")
    lines.append("    +" + "---" * (hi - lo + 1))
    labels = "".join(f"{s:>3}" if s % 4 == 0 else "   " for s in range(lo, hi + 1))
    lines.append("     " + labels)
    lines.append("stem = -(integral degree); Z free, 2/4/8 torsion, ? undecided, . empty")
    return "\n".join(lines) + "\n"


def filtration_zero_check(ss, l=0):
    """Compare the a-power-0 part of E_2 in row ``l`` with :func:`filtration_zero_oracle`.

    Returns ``{n: bool}`` over the integral degrees holding a-power-0 monomials.
    """
    out = {}
    row = ss.row(l)
    for n, monos in row.basis.items():
        if not any(mono[0] == 0 for mono in monos):
            continue
        z, b = ss.filtration_part(l, n, 0, 2)
        expected = filtration_zero_oracle(n, ss.window) if l == 0 else None
        if expected is None:
            continue
        out[n] = not b and lattice.same_lattice(z, expected)
    return out


def leibniz_defect(r, e, f, ss=None):
    """d_r(ef) - d_r(e) f - (-1)^w(e) e d_r(f); zero for d1, a boundary on E_r for d3, d7."""
    sign = -1 if e.weight_parity() else 1
    return d_r(r, e * f) - d_r(r, e) * f - e * d_r(r, f) * sign


def suite(window=DEFAULT_WINDOW, rows=None, seed=0, pairs=200):
    """Run every spectral-sequence check; returns ``[(name, passed, detail)]``."""
    import random

    ss = SpectralSequence(window)
    results = []
    for r in DIFFERENTIALS:
        failures, checked = ss.d_squared_failures(r, rows)
        results.append((f"d{r} o d{r} = 0 on E_{r}", not failures and checked > 0,
                        f"{checked} basis elements, {len(failures)} failures"))
    for name, e in PERMANENT_CYCLES.items():
        ok = ss.survives(e, "inf")
        results.append((f"{name} survives to E_infinity", ok, str(e.degree)))
    order = ss.class_order(PageElement.a(), 2)
    results.append(("a has order 2 on E_2", order == 2, f"order {order}"))
    f0 = filtration_zero_check(ss)
    results.append(("E_2 a-power-0 row equals the invariant span", bool(f0) and all(f0.values()),
                    f"{sum(f0.values())}/{len(f0)} degrees"))
    rng = random.Random(seed)
    bad = 0
    for _ in range(pairs):
        e = PageElement.monomial(rng.randrange(3), rng.randrange(-9, 10), rng.randrange(3), rng.randrange(2),
                                 rng.choice([1, -1, 2, 3]))
        f = PageElement.monomial(rng.randrange(3), rng.randrange(-9, 10), rng.randrange(3), rng.randrange(2),
                                 rng.choice([1, -1, 2, 3]))
        if not leibniz_defect(1, e, f).is_zero():
            bad += 1
    results.append(("d1 is a derivation on random pairs", bad == 0, f"{pairs} pairs, {bad} failures"))
    return results
