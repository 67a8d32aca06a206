import random
from fractions import Fraction

import pytest

from chtoucakit.errors import NotOnStratum, Singular, ZeroLambda, ZeroMu
from chtoucakit.fields import GF, QQ, fmat_eq, fmat_identity, fmat_inverse, fmat_mul
from chtoucakit.complete_homs import (
    CompleteHom,
    StratumData,
    build_stratum_point,
    complete_from_open,
    composition_from_subset,
    exterior_power,
    lang_isogeny,
    satisfies_open_relations,
    stratum_data,
    stratum_of,
    subset_from_composition,
    torus_action,
)


def rand_scalar(field, rng):
    if field is QQ:
        return Fraction(rng.randint(-6, 6), rng.choice([1, 1, 2, 3]))
    return field.from_index(rng.randrange(field.order))


def rand_nonzero(field, rng):
    while True:
        x = rand_scalar(field, rng)
        if not field.is_zero(x):
            return x


def rand_invertible(field, rng, n):
    while True:
        m = [[rand_scalar(field, rng) for _ in range(n)] for _ in range(n)]
        if fmat_inverse(field, m) is not None:
            return m


def rand_stratum_data(field, rng, r):
    cuts = tuple(sorted(rng.sample(range(1, r), rng.randint(0, r - 1))))
    bounds = [0] + list(cuts) + [r]
    g1 = rand_invertible(field, rng, r)
    g2 = rand_invertible(field, rng, r)
    vfilt = tuple(tuple(tuple(g1[i]) for i in range(cut, r)) for cut in cuts)
    wfilt = tuple(tuple(tuple(g2[i]) for i in range(0, cut)) for cut in cuts)
    v = tuple(
        tuple(tuple(row) for row in rand_invertible(field, rng, bounds[t + 1] - bounds[t]))
        for t in range(len(bounds) - 1)
    )
    scales = tuple(rand_nonzero(field, rng) for _ in range(len(bounds) - 1))
    free = tuple(
        sorted((rho, rand_nonzero(field, rng)) for rho in range(1, r) if rho not in cuts)
    )
    return StratumData(field, r, cuts, vfilt, wfilt, v, scales, free)


class TestExteriorPower:
    def test_identity(self):
        i3 = fmat_identity(QQ, 3)
        assert exterior_power(QQ, i3, 2) == i3

    def test_diagonal(self):
        d = [[Fraction(v if i == j else 0) for j, v in enumerate((1, 2, 3))] for i in range(3)]
        w2 = exterior_power(QQ, d, 2)
        assert [w2[i][i] for i in range(3)] == [Fraction(2), Fraction(3), Fraction(6)]

    def test_top_power_is_determinant(self):
        rng = random.Random(1)
        for _ in range(20):
            m = [[rand_scalar(QQ, rng) for _ in range(3)] for _ in range(3)]
            from chtoucakit.fields import fmat_det

            assert exterior_power(QQ, m, 3) == [[fmat_det(QQ, m)]]

    def test_cauchy_binet_over_gf5(self):
        field = GF(5, 1)
        rng = random.Random(2)
        for _ in range(25):
            a = rand_invertible(field, rng, 3)
            b = rand_invertible(field, rng, 3)
            lhs = exterior_power(field, fmat_mul(field, a, b), 2)
            rhs = fmat_mul(field, exterior_power(field, a, 2), exterior_power(field, b, 2))
            assert fmat_eq(field, lhs, rhs)


class TestOpenLocus:
    def test_u2_is_det_over_lambda(self):
        h = complete_from_open(QQ, fmat_identity(QQ, 2), (Fraction(5),))
        assert h.u[1] == [[Fraction(1, 5)]]

    def test_unit_lambda(self):
        h = complete_from_open(QQ, fmat_identity(QQ, 2), (Fraction(1),))
        assert h.u[1] == [[Fraction(1)]]

    def test_diag_minors(self):
        d = [[Fraction(v if i == j else 0) for j, v in enumerate((1, 2, 3))] for i in range(3)]
        h = complete_from_open(QQ, d, (Fraction(1), Fraction(1)))
        assert [h.u[1][i][i] for i in range(3)] == [Fraction(2), Fraction(3), Fraction(6)]
        assert h.u[2] == [[Fraction(6)]]

    def test_relations_hold(self):
        rng = random.Random(3)
        for field in (QQ, GF(5, 1)):
            for _ in range(10):
                u1 = rand_invertible(field, rng, 3)
                lams = (rand_nonzero(field, rng), rand_nonzero(field, rng))
                assert satisfies_open_relations(complete_from_open(field, u1, lams))

    def test_singular_rejected(self):
        with pytest.raises(Singular):
            complete_from_open(QQ, [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]], (Fraction(1),))

    def test_zero_lambda_rejected(self):
        with pytest.raises(ZeroLambda):
            complete_from_open(QQ, fmat_identity(QQ, 2), (Fraction(0),))


def test_stratum_of_open_is_empty():
    h = complete_from_open(QQ, fmat_identity(QQ, 2), (Fraction(3),))
    assert stratum_of(h) == ()


def test_stratum_of_via_build():
    """lambda = (0, x, 0) shapes come out as the cut set {1, 3}."""
    rng = random.Random(5)
    seen = set()
    for _ in range(40):
        d = rand_stratum_data(QQ, rng, 4)
        h = build_stratum_point(d)
        assert stratum_of(h) == d.cuts
        seen.add(d.cuts)
    assert (1, 3) in seen or len(seen) >= 4


class TestTorusAction:
    def test_identity_action(self):
        h = complete_from_open(QQ, fmat_identity(QQ, 2), (Fraction(5),))
        acted = torus_action(h, (Fraction(1),))
        assert acted.eq(h)

    def test_r2_scaling(self):
        h = complete_from_open(QQ, fmat_identity(QQ, 2), (Fraction(5),))
        acted = torus_action(h, (Fraction(3),))
        assert acted.u[1] == [[Fraction(1, 15)]]
        assert acted.lams == (Fraction(15),)

    def test_group_law(self):
        rng = random.Random(7)
        for field in (QQ, GF(5, 1)):
            for _ in range(10):
                d = rand_stratum_data(field, rng, 3)
                h = build_stratum_point(d)
                mu1 = tuple(rand_nonzero(field, rng) for _ in range(2))
                mu2 = tuple(rand_nonzero(field, rng) for _ in range(2))
                lhs = torus_action(torus_action(h, mu1), mu2)
                rhs = torus_action(h, tuple(field.mul(a, b) for a, b in zip(mu1, mu2)))
                assert lhs.eq(rhs)

    def test_preserves_relations_and_stratum(self):
        rng = random.Random(8)
        h = complete_from_open(QQ, rand_invertible(QQ, rng, 3), (Fraction(2), Fraction(3)))
        acted = torus_action(h, (Fraction(5), Fraction(7)))
        assert satisfies_open_relations(acted)
        assert stratum_of(acted) == stratum_of(h)

    def test_zero_mu_rejected(self):
        h = complete_from_open(QQ, fmat_identity(QQ, 2), (Fraction(5),))
        with pytest.raises(ZeroMu):
            torus_action(h, (Fraction(0),))


class TestCompositions:
    def test_bijection_counts(self):
        from itertools import combinations

        for r in range(1, 9):
            subsets = []
            for k in range(r):
                subsets.extend(combinations(range(1, r), k))
            comps = {composition_from_subset(r, s) for s in subsets}
            assert len(comps) == 2 ** (r - 1)
            for s in subsets:
                assert subset_from_composition(composition_from_subset(r, s)) == tuple(sorted(s))


class TestStratumRoundTrip:
    def test_spec_elementary_example(self):
        one, zero = Fraction(1), Fraction(0)
        d = StratumData(
            QQ,
            2,
            (1,),
            vfilt=(((one, zero),),),
            wfilt=(((one, zero),),),
            v=(((one,),), ((one,),)),
            scales=(one, one),
            free_lams=(),
        )
        h = build_stratum_point(d)
        assert h.u[0] == [[zero, one], [zero, zero]]
        assert h.u[1] in ([[one]], [[-one]])
        rec = stratum_data(h)
        assert rec.eq(d.normalized())

    @pytest.mark.parametrize("field", [QQ, GF(5, 1)])
    @pytest.mark.parametrize("r", [2, 3, 4])
    def test_random_round_trips(self, field, r):
        rng = random.Random(100 * r + (0 if field is QQ else 1))
        for _ in range(15):
            d = rand_stratum_data(field, rng, r)
            h = build_stratum_point(d)
            rec = stratum_data(h)
            assert rec.eq(d.normalized())
            assert build_stratum_point(rec).eq(h)

    def test_open_stratum_reduces_to_complete_from_open(self):
        rng = random.Random(11)
        u1 = rand_invertible(QQ, rng, 3)
        lams = (Fraction(2), Fraction(-3))
        d = StratumData(
            QQ,
            3,
            (),
            vfilt=(),
            wfilt=(),
            v=(tuple(tuple(row) for row in u1),),
            scales=(Fraction(1),),
            free_lams=((1, lams[0]), (2, lams[1])),
        )
        assert build_stratum_point(d).eq(complete_from_open(QQ, u1, lams))

    def test_corrupted_input_rejected(self):
        rng = random.Random(12)
        field = GF(5, 1)
        while True:
            d = rand_stratum_data(field, rng, 3)
            if d.cuts:
                break
        h = build_stratum_point(d)
        u = list(h.u)
        u[1] = rand_invertible(field, rng, 3)
        with pytest.raises(NotOnStratum):
            stratum_data(CompleteHom(field, 3, tuple(u), h.lams))


class TestLang:
    def test_rational_entries_fixed(self):
        field = GF(2, 2)
        g = [[field.one(), field.zero()], [field.one(), field.one()]]
        assert fmat_eq(field, lang_isogeny(g, 2, field), fmat_identity(field, 2))

    def test_f4_generator(self):
        field = GF(2, 2)
        omega = field.from_index(2)
        out = lang_isogeny([[omega]], 2, field)
        # tau(w)^{-1} w = w^{1-2} = w^2
        assert out[0][0] == field.mul(omega, omega)

    def test_fixed_points_characterization(self):
        field = GF(2, 2)
        fixed = []
        for i in range(1, 4):
            g = [[field.from_index(i)]]
            if fmat_eq(field, lang_isogeny(g, 2, field), fmat_identity(field, 1)):
                fixed.append(i)
        assert fixed == [1]

    def test_singular_rejected(self):
        field = GF(2, 2)
        with pytest.raises(Singular):
            lang_isogeny([[field.zero()]], 2, field)
