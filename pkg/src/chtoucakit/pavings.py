"""Integer pavés and pavings of the simplex, their secondary cones,
admissibility and q-admissibility via exact LP, and the desk-scale
exhaustive enumeration.

A pavé is the region cut out of the simplex by inequalities
sum_{j in J} x_j >= d_J for a supermodular integer profile (d_J); it is
stored as its saturated set of lattice points together with the derived
profile.  A paving covers the simplex with pavés with pairwise disjoint
interiors.  For n <= 2 every pavé is a union of unit cells (segments or
unit triangles), which makes coverage and disjointness exact integer
bookkeeping; admissibility and interiors are decided by exact rational
LP with a maximized slack variable, so strict feasibility is an honest
boolean.

A paving is admissible exactly when some height function is affine on
each pavé's lattice points and strictly larger elsewhere; the closure of
that set of height classes is the pavé-wise secondary cone, computed
here in the coordinates of the integer quotient lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

from . import qlinalg
from .errors import (
    EmptyInterior,
    NotAdmissible,
    NotAPave,
    NotAPaving,
    TooLarge,
    WrongDimension,
)
from .fans import Cone, Fan
from .ratlp import max_slack
from .simplex_core import (
    LatticeFunction,
    Point,
    enumerate_lattice_points,
    point_key,
    quotient_lattice,
)

ENUMERATION_POINT_CAP = 12  # |S^{r,n}| bound for exhaustive enumeration
ENUMERATION_N_CAP = 2  # unit-cell machinery covers n <= 2 (r >= 2)

# height functions are plain rational functions on the lattice points
HeightFunction = LatticeFunction


def _subsets(n: int):
    """All subsets of {0,...,n} as sorted tuples."""
    items = list(range(n + 1))
    out = []
    for k in range(n + 2):
        out.extend(combinations(items, k))
    return out


def _proper_nonempty_subsets(n: int):
    return [J for J in _subsets(n) if 0 < len(J) < n + 1]


@dataclass(frozen=True)
class PaveProfile:
    r: int
    n: int
    d: tuple[tuple[tuple[int, ...], int], ...]  # ((J, d_J), ...) sorted

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.d)


@dataclass(frozen=True)
class IntegerPave:
    r: int
    n: int
    points: tuple[Point, ...]  # sorted lexicographically
    profile: PaveProfile

    def key(self):
        return (len(self.points), self.points)

    def point_set(self) -> frozenset:
        return frozenset(self.points)

    def contains_point(self, x) -> bool:
        """Membership of an arbitrary lattice point of the ambient simplex."""
        d = self.profile.as_dict()
        return all(sum(x[j] for j in J) >= d[J] for J in _proper_nonempty_subsets(self.n))


def pave_from_points(r: int, n: int, points) -> IntegerPave:
    """Build the pavé determined by a set of lattice points.

    The profile is d_J = min over the points of sum_{j in J} x_j; the
    construction fails (NotAPave) if the profile is not supermodular or
    if the region it cuts out contains lattice points beyond the input,
    and fails (EmptyInterior) if the strict system has no rational
    solution."""
    pts = sorted({tuple(int(x) for x in p) for p in points}, key=point_key)
    if not pts:
        raise NotAPave("empty point set")
    all_pts = enumerate_lattice_points(r, n)
    universe = set(all_pts)
    for p in pts:
        if p not in universe:
            raise NotAPave(f"{p} is not a lattice point of the simplex")
    subsets = _subsets(n)
    d = {J: min(sum(p[j] for j in J) for p in pts) for J in subsets}
    if d[()] != 0 or d[tuple(range(n + 1))] != r:
        raise NotAPave("profile endpoints wrong")  # cannot happen for valid points
    for j1 in subsets:
        for j2 in subsets:
            union = tuple(sorted(set(j1) | set(j2)))
            inter = tuple(sorted(set(j1) & set(j2)))
            if d[j1] + d[j2] > d[union] + d[inter]:
                raise NotAPave(f"profile not supermodular at {j1}, {j2}")
    proper = _proper_nonempty_subsets(n)
    induced = [
        p for p in all_pts if all(sum(p[j] for j in J) >= d[J] for J in proper)
    ]
    if induced != pts:
        extra = [p for p in induced if p not in set(pts)]
        raise NotAPave(f"reconstruction mismatch: region also contains {extra[:3]}")
    # nonempty interior: strict feasibility of the proper inequalities
    rows = []
    rhs = []
    for J in proper:
        rows.append([1 if j in J else 0 for j in range(n + 1)])
        rhs.append(d[J])
    delta, _ = max_slack(rows, rhs, [[1] * (n + 1)], [r])
    if delta <= 0:
        raise EmptyInterior(f"pave has empty interior (slack {delta})")
    profile = PaveProfile(r, n, tuple(sorted(d.items())))
    return IntegerPave(r, n, tuple(pts), profile)


# ---------------------------------------------------------------------------
# unit cells (n <= 2): exact volume and coverage bookkeeping


@lru_cache(maxsize=None)
def unit_cells(r: int, n: int) -> tuple[tuple[Point, ...], ...]:
    """Vertex sets of the unit cells tiling the simplex (n <= 2)."""
    if n == 0:
        return (((r,),),)
    if n == 1:
        return tuple(
            ((r - k, k), (r - k - 1, k + 1)) for k in range(r)
        )
    if n == 2:
        cells = []
        for a in range(r):
            for b in range(r - a):
                c = r - 1 - a - b
                cells.append(((a + 1, b, c), (a, b + 1, c), (a, b, c + 1)))
        for a in range(r - 1):
            for b in range(r - 1 - a):
                c = r - 2 - a - b
                cells.append(((a + 1, b + 1, c), (a + 1, b, c + 1), (a, b + 1, c + 1)))
        return tuple(sorted(cells, key=lambda c: tuple(point_key(v) for v in c)))
    raise TooLarge("unit-cell decomposition implemented for n <= 2 only")


def pave_cell_mask(pave: IntegerPave) -> int:
    """Bitmask of unit cells contained in the pavé (cell in pavé iff all
    its vertices satisfy the profile)."""
    mask = 0
    for idx, cell in enumerate(unit_cells(pave.r, pave.n)):
        if all(pave.contains_point(v) for v in cell):
            mask |= 1 << idx
    return mask


@dataclass(frozen=True)
class Paving:
    r: int
    n: int
    paves: tuple[IntegerPave, ...]  # sorted by canonical pavé key

    def key(self):
        return tuple(p.key() for p in self.paves)

    def __hash__(self):
        return hash((self.r, self.n, self.key()))


def paving_from_paves(r: int, n: int, paves) -> Paving:
    """Assemble and validate a paving: pavés tile the simplex exactly
    (disjoint unit-cell sets whose union is everything)."""
    paves = tuple(sorted(paves, key=lambda p: p.key()))
    if any(p.r != r or p.n != n for p in paves):
        raise NotAPaving("mixed simplex parameters")
    if not paves:
        raise NotAPaving("no paves")
    if n > 2 and len(paves) > 1:
        raise TooLarge("paving validation implemented for n <= 2 only")
    if n > 2:
        full = pave_from_points(r, n, enumerate_lattice_points(r, n))
        if paves[0].points != full.points:
            raise NotAPaving("only the trivial paving is supported for n > 2")
        return Paving(r, n, paves)
    total = (1 << len(unit_cells(r, n))) - 1
    acc = 0
    for p in paves:
        m = pave_cell_mask(p)
        if acc & m:
            raise NotAPaving("pave interiors overlap")
        acc |= m
    if acc != total:
        raise NotAPaving("paves do not cover the simplex")
    return Paving(r, n, paves)


def paving_from_point_sets(r: int, n: int, sets) -> Paving:
    return paving_from_paves(r, n, [pave_from_points(r, n, s) for s in sets])


def trivial_paving(r: int, n: int) -> Paving:
    return paving_from_paves(
        r, n, [pave_from_points(r, n, enumerate_lattice_points(r, n))]
    )


def refines(p: Paving, q: Paving) -> bool:
    """True iff every pavé of p is contained, as a lattice-point set, in
    some pavé of q."""
    if (p.r, p.n) != (q.r, q.n):
        raise WrongDimension("pavings of different simplices")
    qsets = [frozenset(x.points) for x in q.paves]
    return all(any(frozenset(a.points) <= qs for qs in qsets) for a in p.paves)


# ---------------------------------------------------------------------------
# regular subdivisions


def regular_subdivision(h: LatticeFunction) -> Paving:
    """The paving by the domains of affinity of the largest affine
    minorant of h.

    Supports are enumerated through affinely independent (n+1)-point
    interpolation; a support's cell is the full set of lattice points of
    its affinity domain.  If some domain is not an integer pavé (its
    lattice points do not reconstruct it), the height function is
    degenerate for this configuration and NotAPaving is raised."""
    r, n = h.r, h.n
    pts = list(enumerate_lattice_points(r, n))
    supports: dict[frozenset, tuple[Fraction, ...]] = {}
    for sub in combinations(range(len(pts)), n + 1):
        m = [[Fraction(x) for x in pts[i]] for i in sub]
        if qlinalg.rank(m) < n + 1:
            continue
        c = qlinalg.solve(m, [h.values[i] for i in sub])
        if c is None:
            continue
        vals = [
            sum((cj * xj for cj, xj in zip(c, p)), Fraction(0)) for p in pts
        ]
        if any(v > hv for v, hv in zip(vals, h.values)):
            continue  # not a minorant
        touch = frozenset(i for i, (v, hv) in enumerate(zip(vals, h.values)) if v == hv)
        span = [[Fraction(x) for x in pts[i]] for i in touch]
        if qlinalg.rank(span) < n + 1:
            continue  # lower-dimensional contact
        supports[touch] = tuple(vals)
    if not supports:
        raise NotAPaving("no full-dimensional affine support found")
    env = [max(vals[i] for vals in supports.values()) for i in range(len(pts))]
    cells = set()
    for vals in supports.values():
        cell = frozenset(pts[i] for i in range(len(pts)) if vals[i] == env[i])
        cells.add(cell)
    try:
        paves = [pave_from_points(r, n, c) for c in cells]
        return paving_from_paves(r, n, paves)
    except NotAPave as e:
        raise NotAPaving(f"degenerate heights: {e}") from e


# ---------------------------------------------------------------------------
# admissibility


@dataclass
class AdmissibilityResult:
    admissible: bool
    delta: Fraction
    witness: LatticeFunction | None


def _cell_assignment(paving: Paving):
    """For each lattice point, the index of the first pavé containing it."""
    pts = enumerate_lattice_points(paving.r, paving.n)
    owner = {}
    for idx, pave in enumerate(paving.paves):
        for p in pave.points:
            owner.setdefault(p, idx)
    missing = [p for p in pts if p not in owner]
    if missing:
        raise NotAPaving(f"points not covered: {missing[:3]}")
    return owner


def interior_walls(paving: Paving):
    """Pairs (k, l, shared, witness): cells k < l sharing an (n-1)-wall
    (their common lattice points span dimension n-1), with a lattice
    point of cell l off the wall as the fold witness."""
    out = []
    paves = paving.paves
    for k in range(len(paves)):
        set_k = paves[k].point_set()
        for l in range(k + 1, len(paves)):
            shared = [p for p in paves[l].points if p in set_k]
            if not shared:
                continue
            span = qlinalg.rank([[Fraction(x) for x in p] for p in shared])
            if span != paving.n:
                continue
            witness = next(
                p for p in paves[l].points if p not in set(shared)
            )
            out.append((k, l, tuple(shared), witness))
    return out


def _admissibility_lp(paving: Paving, extra_eq_rows=None, extra_vars: int = 0):
    """Shared LP core over per-pavé affine coefficients c_k in R^{n+1}
    (the constant is absorbed since sum x = r on the simplex), plus
    `extra_vars` caller-managed trailing variables.

    The height function is h = c_k . x on pavé k.  Admissibility is the
    local convexity of the glued function: continuity on the lattice
    points of every shared wall, and a strictly positive fold across it,
    which for a piecewise-affine function on a convex domain is
    equivalent to being the lower envelope with the pavés as domains of
    affinity.  Returns (delta, solution_vector, nvars)."""
    n = paving.n
    K = len(paving.paves)
    nvars = K * (n + 1) + extra_vars

    def cell_row(k, x, scale=1):
        row = [Fraction(0)] * nvars
        for j in range(n + 1):
            row[k * (n + 1) + j] = Fraction(scale) * Fraction(x[j])
        return row

    eq_rows = []
    ineq_rows = []
    rhs = []
    for k, l, shared, witness in interior_walls(paving):
        for x in shared:
            row = [a - b for a, b in zip(cell_row(k, x), cell_row(l, x))]
            if any(row):
                eq_rows.append(row)
        # the witness sits in pavé l, where the envelope is c_l . x, and
        # pavé k's support must stay strictly below: (c_l - c_k) . w > 0
        fold = [a - b for a, b in zip(cell_row(l, witness), cell_row(k, witness))]
        ineq_rows.append(fold)
        rhs.append(Fraction(0))
    if extra_eq_rows:
        eq_rows.extend(extra_eq_rows)
    delta, sol = max_slack(
        ineq_rows,
        rhs,
        eq_rows or None,
        [Fraction(0)] * len(eq_rows) if eq_rows else None,
        nvars=nvars,
    )
    if sol is None and delta > 0:
        sol = [Fraction(0)] * nvars
    return delta, sol, nvars


_ADMISSIBLE_CACHE: dict = {}


def is_admissible(paving: Paving) -> AdmissibilityResult:
    """Exact LP: is there a height function affine on every pavé's
    lattice points and strictly above the pavé's affine support
    elsewhere?  The witness induces the paving as its regular
    subdivision."""
    cache_key = (paving.r, paving.n, paving.key())
    if cache_key in _ADMISSIBLE_CACHE:
        return _ADMISSIBLE_CACHE[cache_key]
    delta, sol, _ = _admissibility_lp(paving)
    witness = None
    if delta > 0 and sol is not None:
        n = paving.n
        owner = _cell_assignment(paving)
        vals = []
        for x in enumerate_lattice_points(paving.r, n):
            k = owner[x]
            vals.append(
                sum(
                    (sol[k * (n + 1) + j] * Fraction(x[j]) for j in range(n + 1)),
                    Fraction(0),
                )
            )
        witness = LatticeFunction(paving.r, n, tuple(vals))
    result = AdmissibilityResult(delta > 0, delta, witness)
    _ADMISSIBLE_CACHE[cache_key] = result
    return result


_SIGMA_CACHE: dict = {}


def sigma_cone(paving: Paving) -> Cone:
    """H-description of the closed secondary cone of the paving in the
    integer quotient lattice.

    The per-pavé affine support is eliminated through an affine basis of
    the pavé's lattice points, leaving rows that are linear in the
    height values; heights are then restricted to the canonical section
    (vanishing at the vertices) and rewritten in lattice-basis
    coordinates, so the cone is integral."""
    cache_key = (paving.r, paving.n, paving.key())
    if cache_key in _SIGMA_CACHE:
        return _SIGMA_CACHE[cache_key]
    if not is_admissible(paving).admissible:
        raise NotAdmissible("paving has empty secondary cone")
    r, n = paving.r, paving.n
    pts = enumerate_lattice_points(r, n)
    lattice = quotient_lattice(r, n)
    nonv_index = {p: i for i, p in enumerate(lattice.points)}

    def nf_row(coeffs: dict[Point, Fraction]):
        """Row over normal-form coordinates (vertex coords are zero)."""
        row = [Fraction(0)] * lattice.rank
        for p, c in coeffs.items():
            if p in nonv_index:
                row[nonv_index[p]] += c
        return row

    eq_rows = []
    ineq_rows = []
    for pave in paving.paves:
        basis = []
        for p in pave.points:
            trial = basis + [p]
            if qlinalg.rank([[Fraction(x) for x in b] for b in trial]) == len(trial):
                basis.append(p)
            if len(basis) == n + 1:
                break
        assert len(basis) == n + 1, "pave is not full-dimensional"
        m_inv = qlinalg.inverse([[Fraction(x) for x in b] for b in basis])
        pset = pave.point_set()
        for x in pts:
            if x in basis:
                continue
            # h(x) - x^T M^{-1} h|basis
            lam = qlinalg.mat_vec(
                [list(col) for col in zip(*m_inv)], [Fraction(v) for v in x]
            )
            coeffs: dict[Point, Fraction] = {x: Fraction(1)}
            for b, l in zip(basis, lam):
                coeffs[b] = coeffs.get(b, Fraction(0)) - l
            row = nf_row(coeffs)
            if x in pset:
                if any(row):
                    eq_rows.append(row)
            else:
                ineq_rows.append(row)
    eq_int = [lattice.nf_row_to_coord_row(row) for row in eq_rows]
    ineq_int = [lattice.nf_row_to_coord_row(row) for row in ineq_rows]
    cone = Cone.from_hrep(lattice.rank, ineq_int, eq_int)
    _SIGMA_CACHE[cache_key] = cone
    return cone


def paving_fan(pavings) -> Fan:
    """Assemble the fan of secondary cones over a family of admissible
    pavings (tags record the paving keys)."""
    pavings = list(pavings)
    if not pavings:
        raise NotAPaving("empty paving family")
    rank = quotient_lattice(pavings[0].r, pavings[0].n).rank
    cones = tuple(sigma_cone(p) for p in pavings)
    tags = tuple(str(p.key()) for p in pavings)
    return Fan(rank, cones, tags)


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def candidate_paves(r: int, n: int) -> tuple[IntegerPave, ...]:
    """All integer pavés of the simplex, canonically ordered."""
    pts = enumerate_lattice_points(r, n)
    found: dict = {}
    for size in range(n + 1, len(pts) + 1):
        for sub in combinations(pts, size):
            try:
                pave = pave_from_points(r, n, sub)
            except (NotAPave, EmptyInterior):
                continue
            found[pave.key()] = pave
    return tuple(found[k] for k in sorted(found))


def enumerate_admissible_pavings(r: int, n: int) -> tuple[Paving, ...]:
    """Exhaustive deterministic enumeration of admissible pavings.

    Candidates come from exact cover of the unit cells by integer pavés,
    then each cover is filtered through the admissibility LP.  Output is
    sorted canonically (number of pavés, then lex on pavé point lists)."""
    if comb(r + n, n) > ENUMERATION_POINT_CAP:
        raise TooLarge(f"|S^{{{r},{n}}}| exceeds the enumeration cap")
    if r == 1 or n == 0:
        return (trivial_paving(r, n),)
    if n > ENUMERATION_N_CAP:
        raise TooLarge("enumeration capped at n <= 2 for r >= 2")
    paves = candidate_paves(r, n)
    masks = [pave_cell_mask(p) for p in paves]
    ncells = len(unit_cells(r, n))
    full = (1 << ncells) - 1
    cell_to_paves: list[list[int]] = [[] for _ in range(ncells)]
    for i, m in enumerate(masks):
        for cidx in range(ncells):
            if m & (1 << cidx):
                cell_to_paves[cidx].append(i)

    covers: list[tuple[int, ...]] = []

    def backtrack(acc_mask: int, chosen: tuple[int, ...]):
        if acc_mask == full:
            covers.append(chosen)
            return
        lowest = 0
        while acc_mask & (1 << lowest):
            lowest += 1
        for i in cell_to_paves[lowest]:
            if not (masks[i] & acc_mask):
                backtrack(acc_mask | masks[i], chosen + (i,))

    backtrack(0, ())
    out = []
    for chosen in covers:
        paving = paving_from_paves(r, n, [paves[i] for i in chosen])
        if is_admissible(paving).admissible:
            out.append(paving)
    out.sort(key=lambda p: (len(p.paves), p.key()))
    return tuple(out)


# ---------------------------------------------------------------------------
# q-admissibility (n = 2)


def is_q_admissible(paving: Paving, q: int) -> bool:
    """Does the admissibility LP stay strictly feasible when the height
    class is constrained, up to a global affine shift, to satisfy
    (h+a)(0,i1,i2) = q (h+a)(i1,0,i2) at every boundary point with
    vanishing first coordinate?"""
    if paving.n != 2:
        raise WrongDimension("q-admissibility is defined for n = 2")
    if q < 2:
        raise ValueError("q must be at least 2")
    if not is_admissible(paving).admissible:
        return False
    r, n = paving.r, paving.n
    owner = _cell_assignment(paving)
    K = len(paving.paves)
    base = K * (n + 1)
    nvars = base + (n + 1)  # + global affine coefficients a

    def h_plus_a_row(x, scale: Fraction):
        row = [Fraction(0)] * nvars
        k = owner[x]
        for j in range(n + 1):
            row[k * (n + 1) + j] += scale * Fraction(x[j])
            row[base + j] += scale * Fraction(x[j])
        return row

    tau_rows = []
    for p in enumerate_lattice_points(r, n):
        if p[0] != 0:
            continue
        partner = (p[1], 0, p[2])
        row = h_plus_a_row(p, Fraction(1))
        prow = h_plus_a_row(partner, Fraction(q))
        tau_rows.append([a - b for a, b in zip(row, prow)])
    delta, _, _ = _admissibility_lp(paving, extra_eq_rows=tau_rows, extra_vars=n + 1)
    return delta > 0


def pave_edge_count(pave: IntegerPave) -> int:
    """Number of edges of the pavé as a lattice polygon (n = 2 only);
    pavés are convex hulls of their lattice points, so a monotone-chain
    hull in the (x_1, x_2) chart does it exactly."""
    if pave.n != 2:
        raise WrongDimension("edge counting is defined for n = 2")
    pts = sorted({(p[1], p[2]) for p in pave.points})
    if len(pts) < 3:
        return len(pts)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def chain(points):
        out = []
        for p in points:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(list(reversed(pts)))
    hull = lower[:-1] + upper[:-1]
    return len(hull)


def clear_caches():
    _ADMISSIBLE_CACHE.clear()
    _SIGMA_CACHE.clear()
