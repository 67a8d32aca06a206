"""Rational polyhedral cones in a fixed-rank lattice: double description,
duality, face tests, fan-axiom verification, dual-monoid generators, and
the character-lattice exactness checks for the simplex tori.

Cones are stored canonically: the lineality space as a Hermite-basis of
the saturated integer kernel, extreme rays primitive and reduced modulo
the lineality, both sorted; the H-description mirrors this as equality
rows plus facet rows.  Equality of cones is equality of canonical data.

The double description method runs incrementally over facet rows with
the algebraic (rank-based) adjacency test, which stays correct in the
presence of redundant input rows; all arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import qlinalg, zlattice
from .errors import TooLarge
from .ratlp import max_slack
from .simplex_core import (
    LatticeFunction,
    affine_normal_form,
    enumerate_lattice_points,
    quotient_lattice,
)

# explicit desk-scale caps for the expensive feature-flagged computations
MONOID_RANK_CAP = 4
MONOID_SEARCH_BOUND = 8


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _saturate(vectors: list[tuple[int, ...]], dim: int) -> list[tuple[int, ...]]:
    """HNF basis of the saturated lattice Z^dim intersect span(vectors)."""
    if not vectors:
        return []
    # orthogonal complement over Q, then integer kernel of it
    comp = zlattice.rational_kernel([[Fraction(x) for x in v] for v in vectors], dim)
    if not comp:
        return [tuple(r) for r in zlattice.hnf([list(v) for v in vectors])]
    comp_rows = [list(zlattice.clear_denominators(v)) for v in comp]
    return [tuple(r) for r in zlattice.int_kernel(comp_rows, dim)]


def _clear_denominators_ray(v) -> tuple[int, ...]:
    """Integer primitive vector in the same direction as a rational one."""
    from math import gcd

    fracs = [Fraction(x) for x in v]
    lcm = 1
    for f in fracs:
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    return zlattice.primitive_ray([int(f * lcm) for f in fracs])


def _reduce_mod_lineality(ray, lin_rows) -> tuple[int, ...]:
    """Canonical primitive representative of a ray modulo the lineality
    lattice (zero out the Hermite pivot coordinates)."""
    if not lin_rows:
        return zlattice.primitive_ray(ray)
    v = [Fraction(x) for x in ray]
    for b in lin_rows:
        piv = next(j for j, x in enumerate(b) if x != 0)
        if v[piv] != 0:
            c = v[piv] / b[piv]
            v = [x - c * Fraction(y) for x, y in zip(v, b)]
    w = _clear_denominators_ray(v)
    return w


def double_description(rows: list[tuple[int, ...]], dim: int):
    """Generators of {x : row . x >= 0 for all rows}.

    Returns (lineality_basis, rays): the lineality as a saturated HNF
    basis and the extreme rays (primitive, reduced mod lineality, sorted).
    """
    lin: list[tuple[int, ...]] = [
        tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)
    ]
    rays: list[tuple[int, ...]] = []
    processed: list[tuple[int, ...]] = []

    def zset(r):
        return frozenset(j for j, a in enumerate(processed) if _dot(a, r) == 0)

    for a in rows:
        if all(x == 0 for x in a):
            continue
        cut = next((l for l in lin if _dot(a, l) != 0), None)
        if cut is not None:
            if _dot(a, cut) < 0:
                cut = tuple(-x for x in cut)
            al = _dot(a, cut)
            new_lin = []
            for l in lin:
                if l is cut or l == cut or l == tuple(-x for x in cut):
                    continue
                adj = tuple(al * x - _dot(a, l) * y for x, y in zip(l, cut))
                if any(adj):
                    new_lin.append(zlattice.primitive(adj))
            lin = new_lin
            new_rays = [zlattice.primitive_ray(cut)]
            for r in rays:
                adj = tuple(al * x - _dot(a, r) * y for x, y in zip(r, cut))
                if any(adj):
                    new_rays.append(zlattice.primitive_ray(adj))
            rays = list(dict.fromkeys(new_rays))
        else:
            plus = [r for r in rays if _dot(a, r) > 0]
            zero = [r for r in rays if _dot(a, r) == 0]
            minus = [r for r in rays if _dot(a, r) < 0]
            if minus:
                lin_dim = len(lin)
                zsets = {r: zset(r) for r in rays}
                new_rays = plus + zero
                for rp in plus:
                    for rm in minus:
                        common = zsets[rp] & zsets[rm]
                        tight_rows = [processed[j] for j in common]
                        k_dim = dim - qlinalg.rank(
                            [[Fraction(x) for x in row] for row in tight_rows]
                        ) if tight_rows else dim
                        if k_dim != lin_dim + 2:
                            continue
                        combo = tuple(
                            _dot(a, rp) * x - _dot(a, rm) * y for x, y in zip(rm, rp)
                        )
                        if any(combo):
                            new_rays.append(zlattice.primitive_ray(combo))
                rays = list(dict.fromkeys(new_rays))
        processed.append(tuple(a))

    lin = _saturate(lin, dim)
    canon = []
    for r in rays:
        red = _reduce_mod_lineality(r, lin)
        if any(red):
            canon.append(red)
    return lin, sorted(dict.fromkeys(canon))


@dataclass(frozen=True)
class Cone:
    """A closed rational polyhedral cone in Z^rank, canonical form."""

    rank: int
    lin: tuple[tuple[int, ...], ...]  # lineality lattice basis (HNF)
    rays: tuple[tuple[int, ...], ...]  # extreme rays mod lineality, sorted
    eqs: tuple[tuple[int, ...], ...]  # implied equalities (HNF basis)
    ineqs: tuple[tuple[int, ...], ...]  # facet rows, canonical

    @staticmethod
    def from_hrep(rank: int, ineqs, eqs=()) -> "Cone":
        rows = [tuple(int(x) for x in r) for r in ineqs]
        for e in eqs:
            e = tuple(int(x) for x in e)
            rows.append(e)
            rows.append(tuple(-x for x in e))
        lin, rays = double_description(rows, rank)
        return Cone._canonical(rank, lin, rays)

    @staticmethod
    def from_generators(rank: int, gens) -> "Cone":
        gens = [tuple(int(x) for x in g) for g in gens if any(g)]
        lin_d, rays_d = double_description(gens, rank)
        # hrep of the cone = generators of its dual
        lin, rays = double_description(
            list(rays_d) + [l for b in lin_d for l in (b, tuple(-x for x in b))], rank
        )
        return Cone._canonical(rank, lin, rays, eqs=lin_d, ineqs=rays_d)

    @staticmethod
    def _canonical(rank, lin, rays, eqs=None, ineqs=None) -> "Cone":
        if eqs is None or ineqs is None:
            gens = list(rays) + [v for b in lin for v in (b, tuple(-x for x in b))]
            eqs, ineqs = double_description(gens, rank)
        return Cone(
            rank,
            tuple(tuple(r) for r in lin),
            tuple(tuple(r) for r in rays),
            tuple(tuple(r) for r in eqs),
            tuple(tuple(r) for r in ineqs),
        )

    @staticmethod
    def zero(rank: int) -> "Cone":
        return Cone.from_generators(rank, [])

    @staticmethod
    def full(rank: int) -> "Cone":
        basis = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
        return Cone.from_generators(rank, [v for b in basis for v in (b, tuple(-x for x in b))])

    def generators(self) -> list[tuple[int, ...]]:
        return list(self.rays) + [v for b in self.lin for v in (b, tuple(-x for x in b))]

    def dim(self) -> int:
        gens = self.generators()
        if not gens:
            return 0
        return qlinalg.rank([[Fraction(x) for x in g] for g in gens])

    def is_pointed(self) -> bool:
        return not self.lin

    def contains_vector(self, v) -> bool:
        return all(_dot(e, v) == 0 for e in self.eqs) and all(
            _dot(a, v) >= 0 for a in self.ineqs
        )

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains_vector(g) for g in other.generators())

    def key(self):
        return (self.rank, self.lin, self.rays)

    def __eq__(self, other):
        return isinstance(other, Cone) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def intersect(self, other: "Cone") -> "Cone":
        return Cone.from_hrep(
            self.rank,
            list(self.ineqs) + list(other.ineqs),
            list(self.eqs) + list(other.eqs),
        )

    def transform(self, umat: list[list[int]]) -> "Cone":
        """Image under an integer linear map (rows act on coordinates)."""
        gens = [
            tuple(sum(umat[i][j] * g[j] for j in range(self.rank)) for i in range(len(umat)))
            for g in self.generators()
        ]
        return Cone.from_generators(len(umat), gens)

    def relative_interior_point(self) -> tuple[Fraction, ...] | None:
        """A rational point in the relative interior (None for {0} gives 0)."""
        if not self.ineqs:
            return tuple(Fraction(0) for _ in range(self.rank))
        d, x = max_slack(
            [list(r) for r in self.ineqs],
            [0] * len(self.ineqs),
            [list(e) for e in self.eqs] if self.eqs else None,
            [0] * len(self.eqs) if self.eqs else None,
        )
        if d <= 0 or x is None:
            return None
        return tuple(x[: self.rank])


def dual_cone(c: Cone) -> Cone:
    """The closed dual {y : y(g) >= 0 for all generators g}."""
    return Cone.from_hrep(c.rank, c.generators())


def is_face(t: Cone, c: Cone) -> bool:
    """Standard face-lattice test: t is the intersection of c with the
    valid inequalities tight on it (c counts as a face of itself)."""
    if t.rank != c.rank or not c.contains_cone(t):
        return False
    tgens = t.generators()
    if not tgens:
        tgens = [tuple(0 for _ in range(c.rank))]
    tight = [row for row in c.ineqs if all(_dot(row, g) == 0 for g in tgens)]
    smallest = Cone.from_hrep(
        c.rank,
        [row for row in c.ineqs if row not in tight],
        list(c.eqs) + tight,
    )
    return smallest == t


def proper_faces(c: Cone) -> set[Cone]:
    """All faces of c other than c itself (the zero cone included when
    c is pointed)."""
    out: set[Cone] = set()
    frontier = [c]
    while frontier:
        cur = frontier.pop()
        for i in range(len(cur.ineqs)):
            f = Cone.from_hrep(
                cur.rank,
                [r for j, r in enumerate(cur.ineqs) if j != i],
                list(cur.eqs) + [cur.ineqs[i]],
            )
            if f != cur and f not in out:
                out.add(f)
                frontier.append(f)
    return out


def relint_meets(c1: Cone, c2: Cone) -> bool:
    """Do the relative interiors intersect?  Exact LP test."""
    strict = [list(r) for r in c1.ineqs] + [list(r) for r in c2.ineqs]
    eqs = [list(e) for e in c1.eqs] + [list(e) for e in c2.eqs]
    if not strict:
        # both are linear spaces, whose relative interiors contain 0
        return True
    d, _ = max_slack(strict, [0] * len(strict), eqs or None, [0] * len(eqs) if eqs else None)
    return d > 0


@dataclass
class FanReport:
    ok: bool
    rank: int
    n_cones: int
    failures: list[tuple] = field(default_factory=list)


@dataclass(frozen=True)
class Fan:
    rank: int
    cones: tuple[Cone, ...]
    tags: tuple[str, ...] = ()  # parallel labels (e.g. paving keys)


def verify_fan(fan: Fan) -> FanReport:
    """Check the fan axioms: the zero cone is present, every face of a
    member is a member, and every pair intersects in a common face with
    disjoint relative interiors.  Reports carry every violation found."""
    failures: list[tuple] = []
    cones = list(fan.cones)
    members = set(cones)
    if Cone.zero(fan.rank) not in members:
        failures.append(("missing_zero_cone",))
    for idx, c in enumerate(cones):
        for f in proper_faces(c):
            if f not in members:
                failures.append(("face_missing", idx, f.rays))
                break
    for i in range(len(cones)):
        for j in range(i + 1, len(cones)):
            c1, c2 = cones[i], cones[j]
            if c1 == c2:
                failures.append(("duplicate_cone", i, j))
                continue
            inter = c1.intersect(c2)
            if inter not in members:
                failures.append(("intersection_not_member", i, j))
                continue
            if not (is_face(inter, c1) and is_face(inter, c2)):
                failures.append(("intersection_not_common_face", i, j))
            if relint_meets(c1, c2):
                failures.append(("relative_interiors_meet", i, j))
    return FanReport(not failures, fan.rank, len(cones), failures)


# ---------------------------------------------------------------------------
# dual-monoid generators


def monoid_generators(c: Cone, bound: int = MONOID_SEARCH_BOUND) -> list[tuple[int, ...]]:
    """A finite generating set of the monoid Z^rank intersect dual(c),
    by bounded lattice-point search plus an irreducibility sieve.

    When the dual cone is pointed the result is its Hilbert basis within
    the search box: candidates are processed in increasing order of the
    additive height sum_g <g, y> (g over the generators of c), so an
    element is skipped exactly when it decomposes.  Every monoid element
    inside the box is verified to decompose over the returned set.
    """
    if c.rank > MONOID_RANK_CAP:
        raise TooLarge(f"monoid generators capped at rank {MONOID_RANK_CAP}")
    gens_c = c.generators()
    dual = dual_cone(c)

    def height(y) -> int:
        return sum(_dot(g, y) for g in gens_c)

    # unit lattice = lineality of the dual; quotient map kills it
    unit_rows = [list(b) for b in dual.lin]
    if unit_rows:
        proj_rows = zlattice.int_kernel(unit_rows, c.rank)
    else:
        proj_rows = [tuple(1 if j == i else 0 for j in range(c.rank)) for i in range(c.rank)]

    def project(y):
        return tuple(_dot(w, y) for w in proj_rows)

    def in_dual(y) -> bool:
        return dual.contains_vector(y)

    candidates = []
    span = range(-bound, bound + 1)

    def boxes(prefix, depth):
        if depth == c.rank:
            yield tuple(prefix)
            return
        for v in span:
            prefix.append(v)
            yield from boxes(prefix, depth + 1)
            prefix.pop()

    for y in boxes([], 0):
        if any(y) and in_dual(y):
            candidates.append(y)
    candidates.sort(key=lambda y: (height(y), sum(abs(v) for v in y), y))

    chosen: list[tuple[int, ...]] = []
    chosen_proj: list[tuple[tuple[int, ...], int]] = []  # (projection, height)

    def decomposable(py, h) -> bool:
        """Is the projected vector a nonneg-integer combination of the
        projected chosen generators?  Height strictly decreases along
        the search, so it terminates."""
        memo: set = set()

        def rec(v, hv):
            if all(x == 0 for x in v):
                return True
            if (v, hv) in memo:
                return False
            memo.add((v, hv))
            for s, hs in chosen_proj:
                if hs > hv:
                    continue
                if rec(tuple(a - b for a, b in zip(v, s)), hv - hs):
                    return True
            return False

        return rec(py, h)

    for y in candidates:
        py, h = project(y), height(y)
        if h == 0:
            # unit: nonzero projection impossible; keep a generating set
            # of the unit lattice (both signs of the Hermite basis)
            continue
        if not decomposable(py, h):
            chosen.append(y)
            chosen_proj.append((py, h))

    units = [v for b in dual.lin for v in (b, tuple(-x for x in b))]
    result = sorted(dict.fromkeys(units + chosen))

    # verification: everything in the box decomposes over the result
    res_proj = [(project(s), height(s)) for s in result if height(s) > 0]
    for y in candidates:
        py, h = project(y), height(y)
        if h == 0:
            continue
        memo: set = set()

        def rec2(v, hv):
            if all(x == 0 for x in v):
                return True
            if (v, hv) in memo:
                return False
            memo.add((v, hv))
            for s, hs in res_proj:
                if hs > hv:
                    continue
                if rec2(tuple(a - b for a, b in zip(v, s)), hv - hs):
                    return True
            return False

        assert rec2(py, h), f"monoid element {y} fails to decompose"
    return result


# ---------------------------------------------------------------------------
# torus exact-sequence checks


@dataclass
class SequenceReport:
    ok: bool
    dim_torus: int
    checks: list[tuple[str, bool]]


def torus_sequence_check(r: int, n: int) -> SequenceReport:
    """Exactness, on cocharacter lattices, of

        1 -> Gm -> Gm^{n+1} x Gm -> Gm^{S} -> T -> 1

    with the middle maps z |-> (z,...,z; z^r) and
    (u; z) |-> (u_0^{i_0} ... u_n^{i_n} z^{-1})_i."""
    pts = enumerate_lattice_points(r, n)
    if len(pts) > 12:
        raise TooLarge("torus sequence check capped at 12 lattice points")
    g_rows = [list(p) + [-1] for p in pts]  # map Z^{n+2} -> Z^{S}
    f_vec = [1] * (n + 1) + [r]
    checks = []
    # g o f = 0
    gf = [sum(row[j] * f_vec[j] for j in range(n + 2)) for row in g_rows]
    checks.append(("composite_zero", all(v == 0 for v in gf)))
    # ker(g) = Z f(1)
    ker = zlattice.int_kernel(g_rows, n + 2)
    checks.append(
        ("kernel_is_image", len(ker) == 1 and ker[0] == zlattice.primitive(f_vec))
    )
    # f injective
    checks.append(("first_map_injective", any(f_vec)))
    # image of g saturated: all elementary divisors 1
    divisors = zlattice.snf_diagonal([list(row) for row in g_rows])
    checks.append(("image_saturated", all(d == 1 for d in divisors)))
    dim_t = len(pts) - zlattice.int_rank(g_rows)
    checks.append(("dim_torus", dim_t == len(pts) - n - 1))
    # cross-check against the quotient lattice of normal forms
    checks.append(("quotient_rank", quotient_lattice(r, n).rank == dim_t))
    # image of g consists of affine functions (normal forms vanish)
    affine_ok = True
    for j in range(n + 2):
        vals = tuple(Fraction(row[j]) for row in g_rows)
        nf = affine_normal_form(LatticeFunction(r, n, vals)).normal_form
        if any(v != 0 for v in nf.values):
            affine_ok = False
    checks.append(("image_is_affine", affine_ok))
    return SequenceReport(all(ok for _, ok in checks), dim_t, checks)


def tau_points(r: int) -> tuple[tuple[int, ...], ...]:
    return tuple(p for p in enumerate_lattice_points(r, 2) if p[0] != 0)


def tau_sequence_check(r: int, q: int) -> SequenceReport:
    """Exactness of 1 -> Gm -> Gm^{S_tau} -> T_tau -> 1 where the first
    map is u |-> (u^{i_0 + q i_1}), and well-definedness of the embedding
    into the full simplex torus via t_(0,i1,i2) = t_(i1,0,i2)^q."""
    if r > 4:
        raise TooLarge("tau sequence check capped at r <= 4")
    s_tau = tau_points(r)
    w = [p[0] + q * p[1] for p in s_tau]
    checks = []
    checks.append(("first_map_injective", any(w)))
    checks.append(("cokernel_torsion_free", zlattice.vec_gcd(w) == 1))
    # embedding into Gm^{S^{r,2}} followed by the class map must kill w:
    # E w must be an integer affine exponent vector
    pts = enumerate_lattice_points(r, 2)
    index_tau = {p: i for i, p in enumerate(s_tau)}
    ew = []
    for p in pts:
        if p[0] != 0:
            ew.append(w[index_tau[p]])
        elif p[1] != 0:
            ew.append(q * w[index_tau[(p[1], 0, p[2])]])
        else:
            ew.append(0)
    g_rows = [list(p) + [-1] for p in pts]
    # solve G v = ew over the integers (G has full column rank minus 1)
    sol = qlinalg.solve(
        [[Fraction(x) for x in row] for row in g_rows], [Fraction(v) for v in ew]
    )
    integral = sol is not None and all(x.denominator == 1 for x in sol)
    checks.append(("embedding_descends", integral))
    dim_t = len(s_tau) - 1
    checks.append(("dim_torus", dim_t == len(s_tau) - 1))
    report = SequenceReport(all(ok for _, ok in checks), dim_t, checks)
    report.s_tau_size = len(s_tau)  # type: ignore[attr-defined]
    return report


def orthant_fan(rank: int) -> Fan:
    """The fan of all faces of the nonnegative orthant."""
    from itertools import combinations

    basis = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    cones = []
    for k in range(rank + 1):
        for sub in combinations(range(rank), k):
            cones.append(Cone.from_generators(rank, [basis[i] for i in sub]))
    return Fan(rank, tuple(cones))
