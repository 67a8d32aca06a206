"""Lattice points of the dilated simplex, the affine-function subspace,
and canonical representatives in the quotient of functions mod affine.

Points of the simplex are tuples (i_0, ..., i_n) of nonnegative integers
summing to r, ordered lexicographically everywhere.  A function on the
lattice points is reduced to a normal form by subtracting the unique
affine function agreeing with it at the n+1 vertices r*e_k; the normal
form therefore vanishes at the vertices and is supported on the
non-vertex points.

The quotient lattice (integer functions modulo integer affine functions)
is carried around as an explicit basis, computed once per (r, n) by
Hermite reduction of the images of the standard basis vectors.  Working
in that basis keeps every downstream cone description integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

from . import qlinalg, zlattice

Point = tuple[int, ...]


def point_key(p: Point):
    """Sort key realizing the lexicographic convention used throughout:
    points with larger leading coordinates come first, so the vertex
    r*e_0 leads and r*e_n trails (matching compositions of r)."""
    return tuple(-c for c in p)


@lru_cache(maxsize=None)
def enumerate_lattice_points(r: int, n: int) -> tuple[Point, ...]:
    """All (i_0,...,i_n) with nonnegative integer entries summing to r,
    in lexicographic order (see point_key)."""
    if r < 1 or n < 0:
        raise ValueError("need r >= 1 and n >= 0")

    def rec(budget: int, slots: int):
        if slots == 1:
            yield (budget,)
            return
        for first in range(budget, -1, -1):
            for rest in rec(budget - first, slots - 1):
                yield (first,) + rest

    pts = tuple(rec(r, n + 1))
    assert len(pts) == comb(r + n, n)
    return pts


def vertices(r: int, n: int) -> tuple[Point, ...]:
    """The n+1 simplex vertices r*e_k, in lexicographic order."""
    verts = []
    for k in range(n + 1):
        v = [0] * (n + 1)
        v[k] = r
        verts.append(tuple(v))
    return tuple(sorted(verts, key=point_key))


def nonvertex_points(r: int, n: int) -> tuple[Point, ...]:
    vs = set(vertices(r, n))
    return tuple(p for p in enumerate_lattice_points(r, n) if p not in vs)


@dataclass(frozen=True)
class LatticeFunction:
    """A rational-valued function on all lattice points of the simplex."""

    r: int
    n: int
    values: tuple[Fraction, ...]  # aligned with enumerate_lattice_points(r, n)

    def __post_init__(self):
        if len(self.values) != comb(self.r + self.n, self.n):
            raise ValueError("function must be total on the lattice points")

    @staticmethod
    def from_map(r: int, n: int, mapping) -> "LatticeFunction":
        pts = enumerate_lattice_points(r, n)
        missing = [p for p in pts if p not in mapping]
        if missing:
            raise ValueError(f"missing values at {missing[:3]}")
        return LatticeFunction(r, n, tuple(Fraction(mapping[p]) for p in pts))

    def value_at(self, p: Point) -> Fraction:
        return self.values[point_index(self.r, self.n, p)]

    def as_map(self) -> dict[Point, Fraction]:
        return dict(zip(enumerate_lattice_points(self.r, self.n), self.values))


@dataclass(frozen=True)
class QuotientClass:
    """Canonical representative of a function class modulo affine
    functions: the unique representative vanishing at all vertices."""

    normal_form: LatticeFunction


@lru_cache(maxsize=None)
def point_index(r: int, n: int, p: Point) -> int:
    pts = enumerate_lattice_points(r, n)
    try:
        return pts.index(p)
    except ValueError:
        raise KeyError(f"{p} is not a lattice point of the (r={r}, n={n}) simplex")


def _affine_through_vertices(f: LatticeFunction) -> list[Fraction]:
    """Coefficients c with a(x) = sum c_j x_j matching f at all vertices.

    A constant term is unnecessary because sum x_j = r on the simplex;
    the vertex conditions read r*c_k = f(r*e_k)."""
    c = [Fraction(0)] * (f.n + 1)
    for v in vertices(f.r, f.n):
        k = v.index(f.r)
        c[k] = f.value_at(v) / f.r
    return c


def affine_normal_form(f: LatticeFunction) -> QuotientClass:
    """Subtract the affine interpolant at the vertices; idempotent and
    linear, with kernel exactly the affine functions."""
    c = _affine_through_vertices(f)
    pts = enumerate_lattice_points(f.r, f.n)
    vals = tuple(
        fv - sum((cj * Fraction(xj) for cj, xj in zip(c, p)), Fraction(0))
        for fv, p in zip(f.values, pts)
    )
    return QuotientClass(LatticeFunction(f.r, f.n, vals))


def is_affine(f: LatticeFunction) -> bool:
    return all(v == 0 for v in affine_normal_form(f).normal_form.values)


@dataclass(frozen=True)
class QuotientLattice:
    """The lattice of integer-function classes modulo affine functions.

    ``basis`` rows express a Z-basis in normal-form coordinates (values
    at the non-vertex points, lex order); ``basis_inv`` converts normal
    forms back to integer basis coordinates.  The normal form of an
    integer function is generally non-integral (denominators divide r),
    which is why an explicit basis is carried instead of using raw
    normal-form values as coordinates.
    """

    r: int
    n: int
    rank: int
    points: tuple[Point, ...]  # the non-vertex points, coordinate order
    basis: tuple[tuple[Fraction, ...], ...]
    basis_inv: tuple[tuple[Fraction, ...], ...]

    def class_to_coords(self, qc: QuotientClass) -> tuple[int, ...]:
        """Integer coordinates of an integer-function class."""
        nf = qc.normal_form
        v = [nf.value_at(p) for p in self.points]
        w = qlinalg.mat_vec([list(col) for col in self.basis_inv], v)
        out = []
        for x in w:
            if x.denominator != 1:
                raise ValueError("class is not in the integer quotient lattice")
            out.append(int(x))
        return tuple(out)

    def coords_to_normal_form(self, w) -> tuple[Fraction, ...]:
        """Normal-form values (at the non-vertex points) of basis coords."""
        vals = [Fraction(0)] * self.rank
        for wi, brow in zip(w, self.basis):
            if wi:
                for j in range(self.rank):
                    vals[j] += Fraction(wi) * brow[j]
        return tuple(vals)

    def nf_row_to_coord_row(self, row) -> tuple[int, ...]:
        """Rewrite a linear functional on normal-form values as an integer
        functional on basis coordinates."""
        out = [
            sum((Fraction(row[j]) * self.basis[i][j] for j in range(self.rank)), Fraction(0))
            for i in range(len(self.basis))
        ]
        return zlattice.clear_denominators(out)


@lru_cache(maxsize=None)
def quotient_lattice(r: int, n: int) -> QuotientLattice:
    pts = enumerate_lattice_points(r, n)
    nonv = nonvertex_points(r, n)
    d = len(nonv)
    # images of the standard basis of Z^{S} in normal-form coordinates,
    # scaled by r to land in Z^d
    gens = []
    for k in range(len(pts)):
        f = LatticeFunction(r, n, tuple(Fraction(1 if i == k else 0) for i in range(len(pts))))
        nf = affine_normal_form(f).normal_form
        gens.append([int(nf.value_at(p) * r) for p in nonv])
    h = zlattice.hnf(gens)
    assert len(h) == d, "quotient lattice rank mismatch"
    basis = tuple(tuple(Fraction(x, r) for x in row) for row in h)
    inv = qlinalg.inverse([list(row) for row in basis])
    assert inv is not None
    # basis_inv stored column-major so mat_vec(basis_inv, nf_values) = coords
    # i.e. solve w * basis = v  =>  w = v * basis^{-1}
    binv_rows = tuple(
        tuple(inv[j][i] for j in range(d)) for i in range(d)
    )
    return QuotientLattice(r, n, d, nonv, basis, binv_rows)


def integer_class_lattice_rank(r: int, n: int) -> int:
    """Rank of the quotient lattice: |S^{r,n}| - (n+1)."""
    return comb(r + n, n) - (n + 1)


def affine_subsets(points: list[Point], size: int):
    """All `size`-subsets of `points` that are affinely independent.

    On the hyperplane sum(x) = r, affine independence coincides with
    linear independence of the coordinate vectors."""
    for sub in combinations(points, size):
        m = [[Fraction(x) for x in p] for p in sub]
        if qlinalg.rank(m) == size:
            yield sub
