"""Verification of glued-graph families: rank-r subspaces of V^{n+1}
indexed by the pavés of a paving, subject to the per-pavé dimension
condition and the wall-matching condition across shared boundaries.

Coordinates of V^{n+1} are grouped in n+1 blocks of size r (block j is
factor j); V^J is the span of the blocks in J.  Subspaces are handled as
reduced-row-echelon row bases over an exact field, so equality tests are
canonical-form equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from itertools import combinations

from .errors import InvalidData
from .fields import fmat_kernel, fmat_rank, fmat_row_basis
from .pavings import Paving, trivial_paving
from .complete_homs import StratumData, adapted_bases, _validate_stratum_data
from . import qlinalg
from fractions import Fraction


def _proper_nonempty(n: int):
    items = list(range(n + 1))
    out = []
    for k in range(1, n + 1):
        out.extend(combinations(items, k))
    return out


@dataclass(frozen=True)
class GluedGraphFamily:
    field: object
    paving: Paving
    w: tuple  # one r x r(n+1) row-basis matrix per pavé, paving order

    def __post_init__(self):
        r, n = self.paving.r, self.paving.n
        if len(self.w) != len(self.paving.paves):
            raise InvalidData("need one subspace per pavé")
        for m in self.w:
            if len(m) != r or any(len(row) != r * (n + 1) for row in m):
                raise InvalidData(f"subspace basis must be {r} x {r * (n + 1)}")
            if fmat_rank(self.field, [list(row) for row in m]) != r:
                raise InvalidData("subspace must have rank exactly r")


def _coords_of(n: int, r: int, blocks) -> list[int]:
    out = []
    for j in blocks:
        out.extend(range(j * r, (j + 1) * r))
    return out


def _dim_intersection_with_block(field, w_rows, r: int, n: int, blocks) -> int:
    """dim(W cap V^J): vectors of W supported on the J-blocks."""
    other = [c for c in range(r * (n + 1)) if c not in set(_coords_of(n, r, blocks))]
    if not other:
        return len(w_rows)
    constraint = [[row[c] for row in w_rows] for c in other]
    return len(fmat_kernel(field, constraint, len(w_rows)))


def _restrict_rows(field, w_rows, cols):
    return fmat_row_basis(field, [[row[c] for c in cols] for row in w_rows])


def _intersection_in_coords(field, w_rows, r, n, blocks):
    """Basis of i_J^{-1}(W) = W cap V^J, written in V^J coordinates."""
    jset = set(_coords_of(n, r, blocks))
    other = [c for c in range(r * (n + 1)) if c not in jset]
    if other:
        constraint = [[row[c] for row in w_rows] for c in other]
        combos = fmat_kernel(field, constraint, len(w_rows))
    else:
        combos = [[field.one() if i == t else field.zero() for i in range(len(w_rows))]
                  for t in range(len(w_rows))]
    jcols = _coords_of(n, r, blocks)
    vecs = []
    for c in combos:
        vec = []
        for col in jcols:
            s = field.zero()
            for coeff, row in zip(c, w_rows):
                s = field.add(s, field.mul(coeff, row[col]))
            vec.append(s)
        vecs.append(vec)
    return fmat_row_basis(field, vecs)


@dataclass
class GluingReport:
    ok: bool
    violations: list = dfield(default_factory=list)


def check_dimension_condition(fam: GluedGraphFamily) -> GluingReport:
    """dim(W_P cap V^J) must equal min over the pavé's lattice points of
    sum_{j in J} i_j, for every pavé and every J."""
    r, n = fam.paving.r, fam.paving.n
    violations = []
    subsets = _proper_nonempty(n) + [tuple(range(n + 1)), ()]
    for idx, pave in enumerate(fam.paving.paves):
        w_rows = [list(row) for row in fam.w[idx]]
        for blocks in subsets:
            expected = min(sum(p[j] for j in blocks) for p in pave.points)
            got = _dim_intersection_with_block(fam.field, w_rows, r, n, blocks)
            if got != expected:
                violations.append((idx, blocks, got, expected))
    return GluingReport(not violations, violations)


def shared_walls(paving: Paving):
    """All walls (idx1, idx2, J, d) where pavés idx1, idx2 share an
    (n-1)-dimensional boundary on the hyperplane sum_{j in J} x_j = d
    with d = min over pavé idx1 = max over pavé idx2.

    Each geometric wall is emitted once: among the equivalent
    orientations (J vs its complement with the pavés swapped), the one
    whose first pavé comes first in the paving's canonical order wins."""
    n = paving.n
    walls = []
    for first in range(len(paving.paves)):
        for second in range(first + 1, len(paving.paves)):
            p_first = paving.paves[first]
            p_second = paving.paves[second]
            second_set = set(p_second.points)
            for blocks in _proper_nonempty(n):
                dmin = min(sum(p[j] for j in blocks) for p in p_first.points)
                dmax = max(sum(p[j] for j in blocks) for p in p_second.points)
                if dmin != dmax:
                    continue
                shared = [
                    p
                    for p in p_first.points
                    if p in second_set and sum(p[j] for j in blocks) == dmin
                ]
                if not shared:
                    continue
                span = qlinalg.rank([[Fraction(x) for x in p] for p in shared])
                if span == n:
                    walls.append((first, second, blocks, dmin))
    return walls


def check_gluing_condition(fam: GluedGraphFamily) -> GluingReport:
    """Across every shared wall (P', P'', J): the J-part of W_{P'} cut
    out by V^J must equal the J-projection of W_{P''}, and symmetrically
    with the complement on the other side."""
    r, n = fam.paving.r, fam.paving.n
    field = fam.field
    violations = []
    for (i1, i2, blocks, d) in shared_walls(fam.paving):
        comp = tuple(j for j in range(n + 1) if j not in set(blocks))
        w1 = [list(row) for row in fam.w[i1]]
        w2 = [list(row) for row in fam.w[i2]]
        lhs1 = _intersection_in_coords(field, w1, r, n, blocks)
        rhs1 = _restrict_rows(field, w2, _coords_of(n, r, blocks))
        if lhs1 != rhs1:
            violations.append((i1, i2, blocks, d, "pullback != projection"))
        lhs2 = _restrict_rows(field, w1, _coords_of(n, r, comp))
        rhs2 = _intersection_in_coords(field, w2, r, n, comp)
        if lhs2 != rhs2:
            violations.append((i1, i2, comp, d, "projection != pullback"))
    return GluingReport(not violations, violations)


# ---------------------------------------------------------------------------
# the rank-filtration dictionary at n = 1


def family_from_stratum(d: StratumData) -> GluedGraphFamily:
    """Build the glued-graph family over the interval paving of [0, r]
    cut at d.cuts: the pavé [r_{s-1}, r_s] carries

        (V^s x 0) + (0 x W_{s-1}) + graph of the s-th graded map

    in the adapted bases, which satisfies both glued-graph conditions by
    construction."""
    _validate_stratum_data(d)
    field = d.field
    r = d.r
    bounds = [0] + list(d.cuts) + [r]
    a, b = adapted_bases(field, r, d.cuts, d.vfilt, d.wfilt)
    # columns of a / b are the adapted bases
    a_cols = [[a[i][j] for i in range(r)] for j in range(r)]
    b_cols = [[b[i][j] for i in range(r)] for j in range(r)]
    from .pavings import pave_from_points, paving_from_paves

    paves = []
    w_by_key = {}
    for sigma in range(1, len(bounds)):
        lo, hi = bounds[sigma - 1], bounds[sigma]
        pts = [(r - x, x) for x in range(lo, hi + 1)]
        pave = pave_from_points(r, 1, pts)
        rows = []
        for j in range(hi, r):  # V^sigma = trailing adapted vectors
            rows.append(a_cols[j] + [field.zero()] * r)
        for j in range(lo):  # W_{sigma-1} = leading adapted vectors
            rows.append([field.zero()] * r + b_cols[j])
        sc = d.scales[sigma - 1]
        vmat = d.v[sigma - 1]
        for t in range(hi - lo):
            img = [field.zero()] * r
            for tp in range(hi - lo):
                coeff = field.mul(sc, vmat[tp][t])
                for i in range(r):
                    img[i] = field.add(img[i], field.mul(coeff, b_cols[lo + tp][i]))
            rows.append(a_cols[lo + t] + img)
        paves.append(pave)
        w_by_key[pave.key()] = tuple(tuple(row) for row in rows)
    paving = paving_from_paves(r, 1, paves)
    w = tuple(w_by_key[p.key()] for p in paving.paves)
    return GluedGraphFamily(field, paving, w)


def graph_family(field, paving: Paving, mats) -> GluedGraphFamily:
    """Family for the trivial paving from a tuple (g_0, ..., g_n): the
    common graph {(g_0 v, ..., g_n v)}."""
    r, n = paving.r, paving.n
    if paving.key() != trivial_paving(r, n).key():
        raise InvalidData("graph families live over the trivial paving")
    rows = []
    for t in range(r):
        row = []
        for g in mats:
            col = [g[i][t] for i in range(r)]
            row.extend(col)
        rows.append(row)
    return GluedGraphFamily(field, paving, (tuple(tuple(x) for x in rows),))
