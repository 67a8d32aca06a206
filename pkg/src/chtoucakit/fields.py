"""Exact scalar fields (Q and small GF(p^k)) plus generic dense matrix
routines parametrized by a field object.

GF(p^k) elements are coefficient tuples of length k (little-endian) over
a deterministic modulus: the lexicographically smallest monic irreducible
of degree k over F_p.  Serialization uses the integer index sum c_i p^i.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product


class RationalField:
    name = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return a == 0

    def coerce(self, x):
        return Fraction(x)

    def format(self, a: Fraction) -> str:
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def parse(self, s: str) -> Fraction:
        return Fraction(s)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


QQ = RationalField()


def _poly_mul_mod(a, b, modulus, p):
    k = len(modulus) - 1
    prod_coeffs = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod_coeffs[i + j] = (prod_coeffs[i + j] + ai * bj) % p
    # reduce modulo the monic modulus
    for d in range(len(prod_coeffs) - 1, k - 1, -1):
        c = prod_coeffs[d]
        if c:
            for j in range(k + 1):
                prod_coeffs[d - k + j] = (prod_coeffs[d - k + j] - c * modulus[j]) % p
    out = prod_coeffs[:k]
    out += [0] * (k - len(out))
    return tuple(out)


def _poly_is_irreducible(coeffs, p):
    """Trial division by all monic polynomials of degree <= deg/2."""
    deg = len(coeffs) - 1
    for d in range(1, deg // 2 + 1):
        for lower in product(range(p), repeat=d):
            divisor = list(lower) + [1]
            # long division of coeffs by divisor over F_p
            rem = list(coeffs)
            for top in range(deg, d - 1, -1):
                c = rem[top]
                if c:
                    for j in range(d + 1):
                        rem[top - d + j] = (rem[top - d + j] - c * divisor[j]) % p
            if all(x == 0 for x in rem[:d]):
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over F_p."""
    if k == 1:
        return (0, 1)
    for lower in product(range(p), repeat=k):
        coeffs = tuple(lower) + (1,)
        if _poly_is_irreducible(coeffs, p):
            return coeffs
    raise AssertionError("no irreducible polynomial found")


@dataclass(frozen=True)
class GF:
    """The field with p^k elements, p prime, k >= 1."""

    p: int
    k: int
    modulus: tuple[int, ...] = None  # monic, length k+1

    def __post_init__(self):
        if self.p < 2 or any(self.p % d == 0 for d in range(2, self.p)):
            raise ValueError("p must be prime")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.modulus is None:
            object.__setattr__(self, "modulus", default_modulus(self.p, self.k))
        if len(self.modulus) != self.k + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")

    @property
    def name(self):
        return f"GF({self.p}^{self.k})"

    @property
    def order(self):
        return self.p**self.k

    def zero(self):
        return (0,) * self.k

    def one(self):
        return (1,) + (0,) * (self.k - 1)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        return _poly_mul_mod(a, b, self.modulus, self.p)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of 0")
        return self.pow(a, self.order - 2)

    def pow(self, a, e: int):
        if self.is_zero(a):
            return self.zero() if e > 0 else self.one()
        e %= self.order - 1
        result = self.one()
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frobenius(self, a, q: int):
        """a -> a^q; q must be a power of p."""
        return self.pow(a, q)

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return all(x == 0 for x in a)

    def coerce(self, x):
        if isinstance(x, tuple):
            return tuple(v % self.p for v in x)
        return self.from_index(int(x) % self.order)

    def from_index(self, idx: int):
        out = []
        for _ in range(self.k):
            out.append(idx % self.p)
            idx //= self.p
        return tuple(out)

    def to_index(self, a) -> int:
        idx = 0
        for c in reversed(a):
            idx = idx * self.p + c
        return idx

    def elements(self):
        for idx in range(self.order):
            yield self.from_index(idx)

    def format(self, a) -> str:
        return str(self.to_index(a))

    def parse(self, s: str):
        return self.from_index(int(s))


# ---------------------------------------------------------------------------
# generic matrices: lists of lists of field elements


def fmat_identity(field, n):
    return [[field.one() if i == j else field.zero() for j in range(n)] for i in range(n)]


def fmat_zero(field, nrows, ncols):
    return [[field.zero() for _ in range(ncols)] for _ in range(nrows)]


def fmat_mul(field, a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = fmat_zero(field, n, m)
    for i in range(n):
        for t in range(k):
            c = a[i][t]
            if not field.is_zero(c):
                for j in range(m):
                    out[i][j] = field.add(out[i][j], field.mul(c, b[t][j]))
    return out


def fmat_vec(field, a, v):
    out = []
    for row in a:
        s = field.zero()
        for c, x in zip(row, v):
            s = field.add(s, field.mul(c, x))
        out.append(s)
    return out


def fmat_rref(field, rows):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if not field.is_zero(m[i][c]):
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and not field.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def fmat_rank(field, rows):
    return len(fmat_rref(field, rows)[1])


def fmat_row_basis(field, rows):
    """Canonical (rref, zero rows dropped) basis of the row space."""
    red, pivots = fmat_rref(field, rows)
    return [red[i] for i in range(len(pivots))]


def fmat_inverse(field, a):
    n = len(a)
    aug = [list(row) + fmat_identity(field, n)[i] for i, row in enumerate(a)]
    red, pivots = fmat_rref(field, aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in red[:n]]


def fmat_det(field, a):
    m = [list(r) for r in a]
    n = len(m)
    sign_flip = False
    result = field.one()
    for c in range(n):
        piv = None
        for i in range(c, n):
            if not field.is_zero(m[i][c]):
                piv = i
                break
        if piv is None:
            return field.zero()
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign_flip = not sign_flip
        result = field.mul(result, m[c][c])
        inv = field.inv(m[c][c])
        for i in range(c + 1, n):
            if not field.is_zero(m[i][c]):
                f = field.mul(m[i][c], inv)
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[c])]
    return field.neg(result) if sign_flip else result


def fmat_kernel(field, rows, ncols):
    """Basis of {x : M x = 0}."""
    red, pivots = fmat_rref(field, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero()] * ncols
        v[fc] = field.one()
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(red[i][fc])
        basis.append(v)
    return basis


def fmat_solve(field, a, b):
    """One solution of A x = b, or None."""
    if not a:
        return []
    ncols = len(a[0])
    aug = [list(row) + [bb] for row, bb in zip(a, b)]
    red, pivots = fmat_rref(field, aug)
    for row in red:
        if all(field.is_zero(x) for x in row[:ncols]) and not field.is_zero(row[ncols]):
            return None
    if ncols in pivots:
        return None
    x = [field.zero()] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][ncols]
    return x


def fmat_eq(field, a, b):
    if len(a) != len(b):
        return False
    return all(
        len(ra) == len(rb) and all(field.eq(x, y) for x, y in zip(ra, rb))
        for ra, rb in zip(a, b)
    )
