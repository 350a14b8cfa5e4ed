"""Finitely generated Z_(2)-lattices inside a free module with a fixed basis.

Vectors are sparse dicts ``{coordinate: Fraction}``; every coefficient must
be 2-integral.  Z_(2) is a discrete valuation ring, so row reduction with a
pivot of minimal 2-adic valuation never leaves the ring.
"""
from __future__ import annotations

from fractions import Fraction

from .coeffring import two_adic_valuation

__all__ = [
    "echelon", "contains", "coordinates", "kernel", "combine", "intersect_coordinates", "quotient",
    "same_lattice", "v2",
]


def v2(c):
    return two_adic_valuation(Fraction(c))


def _axpy(y, f, x):
    """y - f*x, in place on y."""
    for k, c in x.items():
        s = y.get(k, 0) - f * c
        if s:
            y[k] = s
        else:
            y.pop(k, None)
    return y


def echelon(vectors, order=None):
    """Row-echelon basis of the Z_(2)-span of ``vectors``.

    Returns a list of ``(pivot, vector)`` with pivot entries normalized to
    powers of 2; ``order`` is the coordinate order used for pivots.
    """
    rows = [dict(v) for v in vectors if v]
    if not rows:
        return []
    if order is None:
        order = sorted({k for r in rows for k in r})
    basis = []
    for col in order:
        best = None
        for i, r in enumerate(rows):
            c = r.get(col)
            if c:
                v = v2(c)
                if best is None or v < best[0]:
                    best = (v, i)
        if best is None:
            continue
        v, i = best
        piv = rows.pop(i)
        unit = Fraction(piv[col]) / Fraction(2) ** v
        piv = {k: Fraction(c) / unit for k, c in piv.items()}
        for r in rows:
            c = r.get(col)
            if c:
                _axpy(r, Fraction(c) / piv[col], piv)
        rows = [r for r in rows if r]
        basis.append((col, piv))
        if not rows:
            break
    return basis


def contains(basis, vector):
    """Is ``vector`` in the Z_(2)-span of an echelon basis?"""
    v = dict(vector)
    for col, row in basis:
        c = v.get(col)
        if c:
            f = Fraction(c) / row[col]
            if v2(f) < 0:
                return False
            _axpy(v, f, row)
    return not v


def coordinates(basis, vector):
    """Coefficients of ``vector`` on an echelon basis; None if not in the span."""
    v = dict(vector)
    coeffs = []
    for col, row in basis:
        c = v.get(col)
        f = Fraction(c) / row[col] if c else Fraction(0)
        if f and v2(f) < 0:
            return None
        if f:
            _axpy(v, f, row)
        coeffs.append(f)
    return coeffs if not v else None


def kernel(vectors):
    """A Z_(2)-basis of ``{c : sum c_i vectors_i = 0}`` as dicts ``{i: c_i}``."""
    rows = []
    for i, v in enumerate(vectors):
        r = {("v", k): Fraction(c) for k, c in v.items()}
        r[("e", i)] = Fraction(1)
        rows.append(r)
    left = sorted({k for r in rows for k in r if k[0] == "v"})
    for col in left:
        best = None
        for i, r in enumerate(rows):
            c = r.get(col)
            if c:
                v = v2(c)
                if best is None or v < best[0]:
                    best = (v, i)
        if best is None:
            continue
        piv = rows.pop(best[1])
        for r in rows:
            c = r.get(col)
            if c:
                _axpy(r, c / piv[col], piv)
    out = []
    for r in rows:
        if all(k[0] == "e" for k in r):
            out.append({k[1]: c for k, c in r.items()})
    return out


def combine(coeffs, vectors):
    result = {}
    for i, c in coeffs.items():
        if c:
            for k, x in vectors[i].items():
                s = result.get(k, 0) + c * x
                if s:
                    result[k] = s
                else:
                    result.pop(k, None)
    return result


def intersect_coordinates(basis_vectors, coords):
    """The sublattice of vectors in the span supported on ``coords`` only."""
    coords = set(coords)
    projected = [{k: c for k, c in v.items() if k not in coords} for v in basis_vectors]
    return [v for v in (combine(c, basis_vectors) for c in kernel(projected)) if v]


def same_lattice(a, b):
    ea, eb = echelon(a), echelon(b)
    return all(contains(eb, v) for v in a) and all(contains(ea, v) for v in b)


def quotient(cycles, boundaries):
    """Smith normal form of span(boundaries) inside span(cycles).

    ``cycles`` must be a linearly independent list of vectors and every
    boundary must lie in their span.  Returns ``[(generator, order)]`` with
    ``order`` either ``None`` (free) or a power of 2, skipping trivial
    summands.
    """
    zb = echelon(cycles)
    basis = [dict(row) for _, row in zb]
    n = len(basis)
    matrix = []
    for b in boundaries:
        co = coordinates(zb, b)
        if co is None:
            raise ValueError("boundary outside the cycle lattice")
        if any(co):
            matrix.append(list(co))
    rank = 0
    m = len(matrix)
    while rank < min(m, n):
        best = None
        for i in range(rank, m):
            for j in range(rank, n):
                c = matrix[i][j]
                if c:
                    v = v2(c)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        v, i, j = best
        t = rank
        matrix[t], matrix[i] = matrix[i], matrix[t]
        for row in matrix:
            row[t], row[j] = row[j], row[t]
        basis[t], basis[j] = basis[j], basis[t]
        # scale column t so the pivot is 2^v; the generator absorbs the unit
        unit = matrix[t][t] / Fraction(2) ** v
        for row in matrix:
            row[t] = row[t] / unit
        basis[t] = {k: c * unit for k, c in basis[t].items()}
        piv = matrix[t][t]
        for i2 in range(m):
            if i2 != t and matrix[i2][t]:
                f = matrix[i2][t] / piv
                matrix[i2] = [a - f * b for a, b in zip(matrix[i2], matrix[t])]
        for j2 in range(n):
            if j2 != t and matrix[t][j2]:
                f = matrix[t][j2] / piv
                for row in matrix:
                    row[j2] = row[j2] - f * row[t]
                # column op col_j2 -= f col_t  <=>  z_t += f z_j2
                basis[t] = _axpy(dict(basis[t]), -f, basis[j2])
        rank += 1
    out = []
    for t in range(n):
        if t < rank:
            v = v2(matrix[t][t])
            if v > 0:
                out.append((basis[t], 2 ** v))
        else:
            out.append((basis[t], None))
    return out
