"""Integer lattice utilities: gcd reduction, Hermite and Smith normal
forms, integer kernels.

Everything works on plain lists of Python ints; sizes here are tiny
(ranks at most ~12), so the classic O(n^3) algorithms with exact integer
arithmetic are more than enough.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def vec_gcd(v) -> int:
    g = 0
    for a in v:
        g = gcd(g, abs(int(a)))
    return g


def primitive_ray(v) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries, keeping the
    direction.  The zero vector maps to itself."""
    g = vec_gcd(v)
    if g == 0:
        return tuple(int(a) for a in v)
    return tuple(int(a) // g for a in v)


def primitive(v) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries; sign-normalize
    so the first nonzero entry is positive.  The zero vector maps to itself."""
    w = primitive_ray(v)
    for a in w:
        if a != 0:
            if a < 0:
                w = tuple(-x for x in w)
            break
    return w


def clear_denominators(row) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector (same sign)."""
    fracs = [Fraction(x) for x in row]
    lcm = 1
    for f in fracs:
        d = f.denominator
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(f * lcm) for f in fracs]
    g = vec_gcd(ints)
    if g > 1:
        ints = [a // g for a in ints]
    return tuple(ints)


def hnf(rows: list[list[int]]) -> list[list[int]]:
    """Row Hermite normal form of the lattice spanned by ``rows``.

    Returns a list of nonzero rows in row-echelon shape: pivots strictly
    to the right as you go down, pivot entries positive, entries above a
    pivot reduced into [0, pivot).
    """
    m = [list(map(int, r)) for r in rows]
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        # eliminate below row r in column c by gcd steps
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            while m[i][c] != 0:
                q = m[r][c] // m[i][c]
                m[r] = [a - q * b for a, b in zip(m[r], m[i])]
                m[r], m[i] = m[i], m[r]
        if m[r][c] < 0:
            m[r] = [-a for a in m[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[r])]
        r += 1
    return [row for row in m[:r]]


def snf_diagonal(rows: list[list[int]], ncols: int | None = None) -> list[int]:
    """Diagonal entries (elementary divisors) of the Smith normal form.

    Minimum-pivot strategy: bring the entry of smallest absolute value
    to the corner; while it fails to divide some entry in its row or
    column, one division step strictly shrinks the minimum, so the
    reduction terminates; then eliminate exactly and recurse."""
    m = [list(map(int, r)) for r in rows]
    if not m:
        return []
    if ncols is None:
        ncols = len(m[0])
    nrows = len(m)
    divisors = []
    top = 0
    while top < min(nrows, ncols):
        # locate the minimal-magnitude nonzero entry of the submatrix
        piv = None
        best = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                v = abs(m[i][j])
                if v and (best is None or v < best):
                    best = v
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        m[top], m[i] = m[i], m[top]
        if j != top:
            for row in m:
                row[top], row[j] = row[j], row[top]
        p = m[top][top]
        # a nonexact division anywhere in the pivot row/column produces
        # a strictly smaller nonzero remainder; restart on it
        dirty = False
        for i in range(top + 1, nrows):
            if m[i][top] % p != 0:
                q = m[i][top] // p
                m[i] = [a - q * b for a, b in zip(m[i], m[top])]
                dirty = True
                break
        if not dirty:
            for j in range(top + 1, ncols):
                if m[top][j] % p != 0:
                    q = m[top][j] // p
                    for row in m:
                        row[j] -= q * row[top]
                    dirty = True
                    break
        if dirty:
            continue
        # exact elimination of the pivot row and column
        for i in range(top + 1, nrows):
            if m[i][top]:
                q = m[i][top] // p
                m[i] = [a - q * b for a, b in zip(m[i], m[top])]
        for j in range(top + 1, ncols):
            if m[top][j]:
                q = m[top][j] // p
                for row in m:
                    row[j] -= q * row[top]
        # enforce divisibility of the remaining block
        d = abs(p)
        offender = None
        for i in range(top + 1, nrows):
            for j in range(top + 1, ncols):
                if m[i][j] % d != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            m[top] = [a + b for a, b in zip(m[top], m[offender])]
            continue
        divisors.append(d)
        top += 1
    return divisors


def int_kernel(rows: list[list[int]], ncols: int) -> list[tuple[int, ...]]:
    """Basis of the integer kernel {x in Z^ncols : M x = 0}.

    Kernels of integer matrices are saturated, so an HNF of the rational
    kernel's integral generators is a genuine lattice basis.
    """
    frac_rows = [[Fraction(a) for a in r] for r in rows]
    ker = rational_kernel(frac_rows, ncols)
    ints = [clear_denominators(v) for v in ker]
    return [tuple(r) for r in hnf([list(v) for v in ints])]


def rational_kernel(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the rational kernel of the matrix given by ``rows``."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    rank = 0
    for c in range(ncols):
        piv = None
        for i in range(rank, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][c]
        m[rank] = [a * inv for a in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        pivots.append(c)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def int_rank(rows: list[list[int]]) -> int:
    if not rows:
        return 0
    frac_rows = [[Fraction(a) for a in r] for r in rows]
    ncols = len(rows[0])
    return ncols - len(rational_kernel(frac_rows, ncols))
