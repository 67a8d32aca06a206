"""Complete homomorphisms between rank-r spaces over an exact field:
exterior-power matrices, the open-locus relations, strata indexed by
subsets of [r-1], stratum data extraction/reconstruction, the scaling
torus action, and the matrix Lang map over finite fields.

A point is a tuple (u_1,...,u_r; lambda_1,...,lambda_{r-1}) where u_rho
is a nonzero C(r,rho)-square matrix (lexicographic wedge bases) and the
open locus satisfies  wedge^rho u_1 = lambda_1^{rho-1} ... lambda_{rho-1}
u_rho.  The stratum of a point is {rho : lambda_rho = 0}, identified
with a composition of r; a stratum point is equivalent to a pair of
filtrations with graded isomorphisms between the associated blocks.

Conventions fixed here so round trips are exact: adapted bases are built
by deterministic reduced-row-echelon completion, graded-map matrices are
stored with their first nonzero entry normalized to 1 alongside the
extracted scale, and wedge signs follow ascending lexicographic subsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .errors import InvalidData, NotOnStratum, Singular, ZeroLambda, ZeroMu
from .fields import (
    GF,
    fmat_det,
    fmat_eq,
    fmat_identity,
    fmat_inverse,
    fmat_kernel,
    fmat_mul,
    fmat_rank,
    fmat_row_basis,
)


def wedge_subsets(r: int, rho: int) -> list[tuple[int, ...]]:
    return list(combinations(range(r), rho))


def _minor(field, a, rows, cols):
    return fmat_det(field, [[a[i][j] for j in cols] for i in rows])


def exterior_power(field, a, rho: int):
    """Matrix of wedge^rho(a) in the lexicographic wedge bases; the
    (I', I) entry is the rho x rho minor on rows I' and columns I."""
    r = len(a)
    subs = wedge_subsets(r, rho)
    return [[_minor(field, a, rows, cols) for cols in subs] for rows in subs]


@dataclass(frozen=True)
class CompleteHom:
    field: object
    r: int
    u: tuple  # u[rho-1]: C(r,rho)-square matrix
    lams: tuple  # lambda_1 ... lambda_{r-1}

    def __post_init__(self):
        if len(self.u) != self.r or len(self.lams) != self.r - 1:
            raise InvalidData("wrong number of matrices or scalars")
        for rho, m in enumerate(self.u, start=1):
            size = comb(self.r, rho)
            if len(m) != size or any(len(row) != size for row in m):
                raise InvalidData(f"u_{rho} must be {size}x{size}")
            if all(self.field.is_zero(x) for row in m for x in row):
                raise InvalidData(f"u_{rho} is zero")

    def eq(self, other: "CompleteHom") -> bool:
        return (
            self.r == other.r
            and all(fmat_eq(self.field, a, b) for a, b in zip(self.u, other.u))
            and all(self.field.eq(a, b) for a, b in zip(self.lams, other.lams))
        )


def lambda_monomial(field, lams, rho: int):
    """lambda_1^{rho-1} lambda_2^{rho-2} ... lambda_{rho-1}."""
    out = field.one()
    for j in range(1, rho):
        for _ in range(rho - j):
            out = field.mul(out, lams[j - 1])
    return out


def complete_from_open(field, u1, lams) -> CompleteHom:
    """The unique point of the open locus over an isomorphism u1 and
    invertible scalars."""
    r = len(u1)
    lams = tuple(lams)
    if len(lams) != r - 1:
        raise InvalidData("need r-1 scalars")
    if any(field.is_zero(l) for l in lams):
        raise ZeroLambda("all lambda_rho must be invertible on the open locus")
    if fmat_inverse(field, u1) is None:
        raise Singular("u_1 must be an isomorphism")
    us = [u1]
    for rho in range(2, r + 1):
        scale = field.inv(lambda_monomial(field, lams, rho))
        wedge = exterior_power(field, u1, rho)
        us.append([[field.mul(scale, x) for x in row] for row in wedge])
    return CompleteHom(field, r, tuple(us), lams)


def satisfies_open_relations(h: CompleteHom) -> bool:
    """Check wedge^rho u_1 = lambda-monomial * u_rho for rho = 2..r."""
    if any(h.field.is_zero(l) for l in h.lams):
        return False
    for rho in range(2, h.r + 1):
        mono = lambda_monomial(h.field, h.lams, rho)
        lhs = exterior_power(h.field, h.u[0], rho)
        rhs = [[h.field.mul(mono, x) for x in row] for row in h.u[rho - 1]]
        if not fmat_eq(h.field, lhs, rhs):
            return False
    return True


def stratum_of(h: CompleteHom) -> tuple[int, ...]:
    return tuple(rho for rho in range(1, h.r) if h.field.is_zero(h.lams[rho - 1]))


def torus_action(h: CompleteHom, mus) -> CompleteHom:
    """(mu_1,...,mu_{r-1}) acts by u_rho -> prod_{j<rho} mu_j^{j-rho} u_rho
    and lambda_rho -> mu_rho lambda_rho, preserving the relations."""
    field = h.field
    mus = tuple(mus)
    if len(mus) != h.r - 1:
        raise InvalidData("need r-1 scalars")
    if any(field.is_zero(m) for m in mus):
        raise ZeroMu("torus scalars must be invertible")
    new_u = [h.u[0]]
    for rho in range(2, h.r + 1):
        scale = field.one()
        for j in range(1, rho):
            inv = field.inv(mus[j - 1])
            for _ in range(rho - j):
                scale = field.mul(scale, inv)
        new_u.append([[field.mul(scale, x) for x in row] for row in h.u[rho - 1]])
    new_lams = tuple(field.mul(m, l) for m, l in zip(mus, h.lams))
    return CompleteHom(field, h.r, tuple(new_u), new_lams)


# ---------------------------------------------------------------------------
# compositions


def composition_from_subset(r: int, subset) -> tuple[int, ...]:
    """{r_1 < ... < r_{s-1}} in [r-1]  <->  parts (r_1, r_2-r_1, ..., r-r_{s-1})."""
    cuts = [0] + sorted(subset) + [r]
    if len(set(cuts)) != len(cuts) or any(not 0 < c < r for c in cuts[1:-1]):
        raise InvalidData("subset must be a strictly increasing subset of [r-1]")
    return tuple(b - a for a, b in zip(cuts, cuts[1:]))


def subset_from_composition(parts) -> tuple[int, ...]:
    if any(p < 1 for p in parts):
        raise InvalidData("parts must be positive")
    cuts = []
    acc = 0
    for p in parts[:-1]:
        acc += p
        cuts.append(acc)
    return tuple(cuts)


# ---------------------------------------------------------------------------
# strata


@dataclass(frozen=True)
class StratumData:
    """Filtration pair with normalized graded isomorphisms.

    vfilt[t] is a row-basis of V^{t+1} (the proper members of the
    decreasing filtration, codimensions r_1 < ... < r_{s-1}); wfilt[t] a
    row-basis of W_{t+1} (increasing, dimensions r_1 < ... < r_{s-1}).
    v[sigma-1] is the graded map V^{sigma-1}/V^sigma -> W_sigma/W_{sigma-1}
    in the canonical adapted bases, normalized so its first nonzero entry
    (row-major) is 1; scales[sigma-1] carries the true scalar.
    free_lams[rho] holds lambda_rho for rho not in R.
    """

    field: object
    r: int
    cuts: tuple[int, ...]  # R as a sorted tuple
    vfilt: tuple
    wfilt: tuple
    v: tuple
    scales: tuple
    free_lams: tuple  # pairs (rho, lambda_rho), rho not in R, sorted

    def blocks(self) -> tuple[int, ...]:
        return composition_from_subset(self.r, self.cuts)

    def normalized(self) -> "StratumData":
        """Move each graded matrix's leading coefficient into the scale."""
        field = self.field
        new_v = []
        new_scales = []
        for m, s in zip(self.v, self.scales):
            lead = _first_nonzero(field, m)
            if lead is None:
                raise InvalidData("graded map is zero")
            inv = field.inv(lead)
            new_v.append(tuple(tuple(field.mul(inv, x) for x in row) for row in m))
            new_scales.append(field.mul(s, lead))
        return StratumData(
            field,
            self.r,
            self.cuts,
            self.vfilt,
            self.wfilt,
            tuple(new_v),
            tuple(new_scales),
            self.free_lams,
        )

    def eq(self, other: "StratumData") -> bool:
        if (self.r, self.cuts) != (other.r, other.cuts):
            return False
        f = self.field
        if len(self.free_lams) != len(other.free_lams):
            return False
        for (r1, l1), (r2, l2) in zip(self.free_lams, other.free_lams):
            if r1 != r2 or not f.eq(l1, l2):
                return False
        for a, b in zip(self.vfilt + self.wfilt, other.vfilt + other.wfilt):
            if not fmat_eq(f, fmat_row_basis(f, [list(r) for r in a]),
                           fmat_row_basis(f, [list(r) for r in b])):
                return False
        for a, b in zip(self.v, other.v):
            if not fmat_eq(f, [list(r) for r in a], [list(r) for r in b]):
                return False
        return all(f.eq(a, b) for a, b in zip(self.scales, other.scales))


def _first_nonzero(field, m):
    for row in m:
        for x in row:
            if not field.is_zero(x):
                return x
    return None


def _complete_rows(field, have: list, pool: list, target_rank: int):
    """Extend `have` with rows from `pool` (scanned in order) until the
    collection has the target rank; deterministic completion."""
    out = list(have)
    for row in pool:
        if len(out) == target_rank:
            break
        if fmat_rank(field, out + [row]) == len(out) + 1:
            out.append(row)
    if len(out) != target_rank:
        raise InvalidData("cannot complete basis: containment violated")
    return out


def adapted_bases(field, r: int, cuts, vfilt, wfilt):
    """Adapted bases for a filtration pair.

    Returns (A, B): columns of A are the V-adapted basis grouped in
    blocks 1..s with V^sigma spanned by the trailing columns; columns of
    B are the W-adapted basis with W_sigma spanned by the leading
    columns.  Completion scans canonical (rref) bases then standard unit
    vectors, so the choice is deterministic."""
    s = len(cuts) + 1
    std = fmat_identity(field, r)
    # V side: build blocks from the bottom of the filtration upwards
    v_spaces = [fmat_row_basis(field, [list(row) for row in m]) for m in vfilt]
    v_spaces = [std] + v_spaces + [[]]  # V^0 .. V^s
    collected: list = []
    v_blocks: list = [None] * s
    for sigma in range(s, 0, -1):
        target = len(v_spaces[sigma - 1])
        pool = v_spaces[sigma - 1]
        new = _complete_rows(field, collected, pool, target)
        v_blocks[sigma - 1] = new[len(collected):]
        collected = new
    v_adapted = [row for block in v_blocks for row in block]
    # reorder: adapted basis e_1..e_r with V^sigma = span of trailing
    # vectors; collected went from block s upward, so v_blocks[sigma-1]
    # holds block sigma's lifts already in block order
    a_cols = v_adapted
    # W side: from W_1 upwards
    w_spaces = [[]] + [fmat_row_basis(field, [list(row) for row in m]) for m in wfilt] + [std]
    collected = []
    w_blocks: list = [None] * s
    for sigma in range(1, s + 1):
        target = len(w_spaces[sigma])
        pool = w_spaces[sigma]
        new = _complete_rows(field, collected, pool, target)
        w_blocks[sigma - 1] = new[len(collected):]
        collected = new
    b_cols = [row for block in w_blocks for row in block]
    # column-major matrices
    a = [[a_cols[j][i] for j in range(r)] for i in range(r)]
    b = [[b_cols[j][i] for j in range(r)] for i in range(r)]
    return a, b


def _validate_stratum_data(d: StratumData):
    field = d.field
    r = d.r
    cuts = list(d.cuts)
    if cuts != sorted(set(cuts)) or any(not 0 < c < r for c in cuts):
        raise InvalidData("cuts must be a strictly increasing subset of [r-1]")
    s = len(cuts) + 1
    bounds = [0] + cuts + [r]
    if len(d.vfilt) != s - 1 or len(d.wfilt) != s - 1:
        raise InvalidData("need one proper subspace per cut")
    for t, m in enumerate(d.vfilt):
        if fmat_rank(field, [list(row) for row in m]) != r - bounds[t + 1]:
            raise InvalidData(f"V^{t+1} has wrong dimension")
    for t, m in enumerate(d.wfilt):
        if fmat_rank(field, [list(row) for row in m]) != bounds[t + 1]:
            raise InvalidData(f"W_{t+1} has wrong dimension")
    # nesting
    for t in range(len(d.vfilt) - 1):
        big = [list(row) for row in d.vfilt[t]]
        for row in d.vfilt[t + 1]:
            if fmat_rank(field, big + [list(row)]) != len(fmat_row_basis(field, big)):
                raise InvalidData("V filtration is not decreasing")
    for t in range(len(d.wfilt) - 1):
        big = [list(row) for row in d.wfilt[t + 1]]
        for row in d.wfilt[t]:
            if fmat_rank(field, big + [list(row)]) != len(fmat_row_basis(field, big)):
                raise InvalidData("W filtration is not increasing")
    if len(d.v) != s or len(d.scales) != s:
        raise InvalidData("need one graded map and scale per block")
    for sigma in range(1, s + 1):
        m_sigma = bounds[sigma] - bounds[sigma - 1]
        mat = [list(row) for row in d.v[sigma - 1]]
        if len(mat) != m_sigma or any(len(row) != m_sigma for row in mat):
            raise InvalidData(f"graded map {sigma} has wrong shape")
        if fmat_inverse(field, mat) is None:
            raise InvalidData(f"graded map {sigma} is singular")
        if field.is_zero(d.scales[sigma - 1]):
            raise InvalidData("scales must be invertible")
    free = dict(d.free_lams)
    expected = [rho for rho in range(1, r) if rho not in set(cuts)]
    if sorted(free) != expected:
        raise InvalidData("free lambdas must cover exactly [r-1] minus the cuts")
    if any(field.is_zero(l) for l in free.values()):
        raise InvalidData("free lambdas must be invertible")


def _free_monomial(field, r: int, cuts, free, rho: int):
    """prod over j in [rho-1] minus cuts of lambda_j^{rho-j}."""
    out = field.one()
    cutset = set(cuts)
    for j in range(1, rho):
        if j in cutset:
            continue
        for _ in range(rho - j):
            out = field.mul(out, free[j])
    return out


def build_stratum_point(d: StratumData) -> CompleteHom:
    """Construct the point of the stratum indexed by d.cuts.

    In the adapted bases, u_rho acts only on wedge coordinates that use
    all of blocks 1..sigma-1 plus rho - r_{sigma-1} indices from block
    sigma (r_{sigma-1} < rho <= r_sigma), where it is the corresponding
    minor of the graded maps; elsewhere it vanishes.  The free lambdas
    scale u_rho exactly as on the open locus."""
    _validate_stratum_data(d)
    field = d.field
    r = d.r
    cuts = list(d.cuts)
    bounds = [0] + cuts + [r]
    s = len(cuts) + 1
    free = dict(d.free_lams)
    a, b = adapted_bases(field, r, d.cuts, d.vfilt, d.wfilt)
    a_inv = fmat_inverse(field, a)
    assert a_inv is not None
    true_v = []
    for sigma in range(1, s + 1):
        sc = d.scales[sigma - 1]
        true_v.append(
            [[field.mul(sc, x) for x in row] for row in d.v[sigma - 1]]
        )
    us = []
    for rho in range(1, r + 1):
        sigma = next(t for t in range(1, s + 1) if bounds[t - 1] < rho <= bounds[t])
        lead = field.one()
        for j in range(1, sigma):
            lead = field.mul(lead, fmat_det(field, true_v[j - 1]))
        size = comb(r, rho)
        subs = wedge_subsets(r, rho)
        index = {sub: i for i, sub in enumerate(subs)}
        base_block = tuple(range(bounds[sigma - 1]))
        lo, hi = bounds[sigma - 1], bounds[sigma]
        kk = rho - bounds[sigma - 1]
        g = [[field.zero()] * size for _ in range(size)]
        for kin in combinations(range(lo, hi), kk):
            col = index[base_block + kin]
            for kout in combinations(range(lo, hi), kk):
                row_idx = index[base_block + kout]
                minor = _minor(
                    field,
                    true_v[sigma - 1],
                    [i - lo for i in kout],
                    [i - lo for i in kin],
                )
                g[row_idx][col] = field.mul(lead, minor)
        scale = field.inv(_free_monomial(field, r, cuts, free, rho))
        g = [[field.mul(scale, x) for x in row] for row in g]
        wb = exterior_power(field, b, rho)
        wa = exterior_power(field, a_inv, rho)
        us.append(fmat_mul(field, fmat_mul(field, wb, g), wa))
    lams = tuple(
        field.zero() if rho in set(cuts) else free[rho] for rho in range(1, r)
    )
    return CompleteHom(field, r, tuple(us), lams)


def _kernel_of_wedge_map(field, u_rho, r: int, rho: int):
    """Matrix rows of v |-> u_rho(v wedge e_K) over all (rho-1)-subsets K,
    whose kernel is the recovered subspace V^sigma."""
    subs_in = wedge_subsets(r, rho)
    index_in = {sub: i for i, sub in enumerate(subs_in)}
    rows = []
    size_out = comb(r, rho)
    for k_sub in wedge_subsets(r, rho - 1):
        cols = []
        for i in range(r):
            if i in k_sub:
                cols.append([field.zero()] * size_out)
                continue
            merged = tuple(sorted(k_sub + (i,)))
            sign = sum(1 for x in k_sub if x < i) % 2
            col_idx = index_in[merged]
            vec = [u_rho[t][col_idx] for t in range(size_out)]
            if sign:
                vec = [field.neg(x) for x in vec]
            cols.append(vec)
        for t in range(size_out):
            rows.append([cols[i][t] for i in range(r)])
    return rows


def _support_span(field, u_rho, r: int, rho: int):
    """Smallest subspace U with image(u_rho) inside wedge^rho U, via
    interior products of the image generators by all (rho-1)-covectors.

    The contraction of w by e*_L is sum_i (-1)^{#{l in L : l > i}}
    w_{L u {i}} e_i; for decomposable w it lands in the spanning
    subspace, so the union of contractions spans exactly U."""
    subs = wedge_subsets(r, rho)
    index = {sub: i for i, sub in enumerate(subs)}
    vectors = []
    ncols = len(u_rho[0])
    for c in range(ncols):
        col = [u_rho[t][c] for t in range(len(u_rho))]
        if all(field.is_zero(x) for x in col):
            continue
        for l_sub in wedge_subsets(r, rho - 1):
            vec = [field.zero()] * r
            nonzero = False
            for i in range(r):
                if i in l_sub:
                    continue
                merged = tuple(sorted(l_sub + (i,)))
                coeff = col[index[merged]]
                if sum(1 for l in l_sub if l > i) % 2:
                    coeff = field.neg(coeff)
                vec[i] = coeff
                if not field.is_zero(coeff):
                    nonzero = True
            if nonzero:
                vectors.append(vec)
    return fmat_row_basis(field, vectors)


def stratum_data(h: CompleteHom) -> StratumData:
    """Recover filtrations, graded maps and scales from a stratum point.

    The graded map of block sigma is read off u_{r_{sigma-1}+1} in the
    adapted bases; the lambda monomial and the determinants of the
    already-recovered blocks are divided out, so recovery is exact.  The
    result is validated by rebuilding the point; any mismatch raises
    NotOnStratum."""
    field = h.field
    r = h.r
    cuts = stratum_of(h)
    bounds = [0] + list(cuts) + [r]
    s = len(cuts) + 1
    vfilt: list = []
    wfilt: list = []
    for t, cut in enumerate(cuts):
        rho = cut
        kernel_rows = _kernel_of_wedge_map(field, h.u[rho - 1], r, rho)
        ker = fmat_kernel(field, kernel_rows, r)
        if len(ker) != r - cut:
            raise NotOnStratum(
                f"recovered V^{t+1} has dimension {len(ker)}, expected {r - cut}"
            )
        vfilt.append(tuple(tuple(row) for row in fmat_row_basis(field, ker)))
        span = _support_span(field, h.u[rho - 1], r, rho)
        if len(span) != cut:
            raise NotOnStratum(
                f"recovered W_{t+1} has dimension {len(span)}, expected {cut}"
            )
        wfilt.append(tuple(tuple(row) for row in span))
    # nesting checks
    for t in range(len(vfilt) - 1):
        big = [list(row) for row in vfilt[t]]
        for row in vfilt[t + 1]:
            if fmat_rank(field, big + [list(row)]) != len(big):
                raise NotOnStratum("recovered V filtration is not nested")
    for t in range(len(wfilt) - 1):
        big = [list(row) for row in wfilt[t + 1]]
        for row in wfilt[t]:
            if fmat_rank(field, big + [list(row)]) != len(big):
                raise NotOnStratum("recovered W filtration is not nested")
    free = {rho: h.lams[rho - 1] for rho in range(1, r) if rho not in set(cuts)}
    a, b = adapted_bases(field, r, cuts, vfilt, wfilt)
    b_inv = fmat_inverse(field, b)
    assert b_inv is not None
    v_hat = []
    scales = []
    true_dets = []
    for sigma in range(1, s + 1):
        rho = bounds[sigma - 1] + 1
        size = comb(r, rho)
        subs = wedge_subsets(r, rho)
        index = {sub: i for i, sub in enumerate(subs)}
        # u_rho in adapted bases
        wb = exterior_power(field, b_inv, rho)
        wa = exterior_power(field, a, rho)
        u_ad = fmat_mul(field, fmat_mul(field, wb, h.u[rho - 1]), wa)
        lo, hi = bounds[sigma - 1], bounds[sigma]
        m_sigma = hi - lo
        base_block = tuple(range(lo))
        phi = [[field.zero()] * m_sigma for _ in range(m_sigma)]
        for tin in range(m_sigma):
            col = index[base_block + (lo + tin,)]
            for tout in range(m_sigma):
                row_idx = index[base_block + (lo + tout,)]
                phi[tout][tin] = u_ad[row_idx][col]
        # off-block entries of u_ad must vanish on a genuine stratum point
        # (checked globally by the rebuild below)
        mono = _free_monomial(field, r, cuts, free, rho)
        lead = field.one()
        for dete in true_dets:
            lead = field.mul(lead, dete)
        denom = field.mul(field.inv(mono), lead)
        if field.is_zero(denom):
            raise NotOnStratum("degenerate scaling while extracting graded maps")
        inv_denom = field.inv(denom)
        tilde = [[field.mul(inv_denom, x) for x in row] for row in phi]
        first = _first_nonzero(field, tilde)
        if first is None:
            raise NotOnStratum(f"graded map {sigma} vanishes")
        inv_first = field.inv(first)
        v_hat.append(
            tuple(tuple(field.mul(inv_first, x) for x in row) for row in tilde)
        )
        scales.append(first)
        if fmat_inverse(field, tilde) is None:
            raise NotOnStratum(f"graded map {sigma} is singular")
        true_dets.append(fmat_det(field, tilde))
    data = StratumData(
        field,
        r,
        tuple(cuts),
        tuple(vfilt),
        tuple(wfilt),
        tuple(v_hat),
        tuple(scales),
        tuple(sorted(free.items())),
    )
    rebuilt = build_stratum_point(data)
    if not rebuilt.eq(h):
        raise NotOnStratum("point does not satisfy the stratum relations")
    return data


# ---------------------------------------------------------------------------
# Lang map


def lang_isogeny(g, q: int, field: GF):
    """tau(g)^{-1} g where tau raises every entry to the q-th power."""
    if not isinstance(field, GF):
        raise InvalidData("the Lang map needs a finite field")
    p = field.p
    qq = q
    while qq % p == 0:
        qq //= p
    if qq != 1 or q < 2:
        raise InvalidData("q must be a positive power of the characteristic")
    tg = [[field.frobenius(x, q) for x in row] for row in g]
    tg_inv = fmat_inverse(field, tg)
    if tg_inv is None or fmat_inverse(field, g) is None:
        raise Singular("matrix must be invertible")
    return fmat_mul(field, tg_inv, g)
