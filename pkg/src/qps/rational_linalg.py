"""Exact linear algebra over the rationals.

Matrices are plain ``list[list[Fraction]]`` (row-major).  Elimination is
fraction-free (Bareiss): rows are first scaled to coprime integers, then
reduced with the two-term determinant update, so every intermediate entry
is an exact integer.  Rank and nullspace decisions are therefore exact,
which is what the cohomology dimensions require.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def as_fraction_rows(rows):
    return [[Fraction(x) for x in row] for row in rows]


def _integer_rows(rows):
    """Scale each row by the lcm of its denominators (preserves row space
    and nullspace)."""
    out = []
    for row in rows:
        scale = 1
        for x in row:
            scale = scale * x.denominator // gcd(scale, x.denominator)
        out.append([int(x * scale) for x in row])
    return out


def _bareiss_echelon(rows):
    """Fraction-free row echelon form of an integer matrix (in place).

    Returns the list of pivot columns; the reduced rows stay integral.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    piv_cols = []
    prev = 1
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, m):
            fi = rows[i][c]
            for j in range(n):
                rows[i][j] = (piv * rows[i][j] - fi * rows[r][j]) // prev
        prev = piv
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    return piv_cols


def _primitive(vec):
    """Clear denominators, divide out the content, make the first nonzero
    entry positive.  Canonical representative of the ray through ``vec``."""
    scale = 1
    for x in vec:
        scale = scale * x.denominator // gcd(scale, x.denominator)
    ints = [int(x * scale) for x in vec]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    lead = next((v for v in ints if v != 0), 1)
    if lead < 0:
        ints = [-v for v in ints]
    return [Fraction(v) for v in ints]


def rank(rows, ncols=None):
    rows = as_fraction_rows(rows)
    if not rows or (ncols is not None and ncols == 0):
        return 0
    work = _integer_rows(rows)
    return len(_bareiss_echelon(work))


def _rref(rows):
    """Reduced row echelon form over Fraction.  Returns (rows, pivot cols)."""
    work = _integer_rows(as_fraction_rows(rows)) if rows else []
    piv_cols = _bareiss_echelon(work)
    red = [[Fraction(x) for x in work[r]] for r in range(len(piv_cols))]
    for r in reversed(range(len(piv_cols))):
        c = piv_cols[r]
        piv = red[r][c]
        red[r] = [x / piv for x in red[r]]
        for i in range(r):
            f = red[i][c]
            if f != 0:
                red[i] = [a - f * b for a, b in zip(red[i], red[r])]
    return red, piv_cols


def nullspace(rows, ncols):
    """Basis of {x : rows @ x = 0} as primitive rational vectors."""
    if ncols == 0:
        return []
    if not rows:
        basis = []
        for f in range(ncols):
            v = [Fraction(0)] * ncols
            v[f] = Fraction(1)
            basis.append(v)
        return basis
    red, piv_cols = _rref(rows)
    free = [c for c in range(ncols) if c not in piv_cols]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(piv_cols):
            v[c] = -red[r][f]
        basis.append(_primitive(v))
    return basis


def row_space_basis(rows):
    """Basis of the row space as primitive vectors (RREF pivot rows)."""
    if not rows:
        return []
    red, piv_cols = _rref(rows)
    return [_primitive(red[r]) for r in range(len(piv_cols))]


def in_span(basis, vec):
    """True iff ``vec`` lies in the span of ``basis`` (exact)."""
    if all(x == 0 for x in vec):
        return True
    if not basis:
        return False
    r0 = rank(basis)
    return rank(list(basis) + [list(vec)]) == r0


def mat_mul(a, b):
    """Exact product of two Fraction matrices."""
    a = as_fraction_rows(a)
    b = as_fraction_rows(b)
    if not a:
        return []
    inner = len(a[0])
    ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        out.append(
            [sum((row[k] * b[k][j] for k in range(inner)), Fraction(0)) for j in range(ncols)]
        )
    return out


def mat_vec(a, v):
    a = as_fraction_rows(a)
    v = [Fraction(x) for x in v]
    return [sum((row[k] * v[k] for k in range(len(v))), Fraction(0)) for row in a]
