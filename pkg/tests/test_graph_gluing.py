import random
from fractions import Fraction

import pytest

from chtoucakit.errors import InvalidData
from chtoucakit.fields import GF, QQ, fmat_identity, fmat_inverse
from chtoucakit.graph_gluing import (
    GluedGraphFamily,
    check_dimension_condition,
    check_gluing_condition,
    family_from_stratum,
    graph_family,
    shared_walls,
)
from chtoucakit.pavings import paving_from_point_sets, trivial_paving
from chtoucakit.complete_homs import StratumData

from test_complete_homs import rand_stratum_data


class TestDimensionCondition:
    def test_graph_of_isomorphism_passes(self):
        field = GF(3, 1)
        g0 = fmat_identity(field, 2)
        g1 = [[field.from_index(2), field.from_index(1)], [field.zero(), field.one()]]
        fam = graph_family(field, trivial_paving(2, 1), [g0, g1])
        assert check_dimension_condition(fam).ok

    def test_factor_subspace_fails(self):
        field = GF(3, 1)
        rows = tuple(
            tuple(fmat_identity(field, 2)[i] + [field.zero()] * 2) for i in range(2)
        )
        fam = GluedGraphFamily(field, trivial_paving(2, 1), (rows,))
        rep = check_dimension_condition(fam)
        assert not rep.ok
        assert any(v[1] == (0,) and v[2] == 2 and v[3] == 0 for v in rep.violations)

    def test_rank_validation(self):
        field = GF(3, 1)
        rows = ((field.one(), field.zero(), field.zero(), field.zero()),) * 2
        with pytest.raises(InvalidData):
            GluedGraphFamily(field, trivial_paving(2, 1), (rows,))


class TestSharedWalls:
    def test_trivial_paving_no_walls(self):
        assert shared_walls(trivial_paving(3, 1)) == []

    def test_interval_wall(self):
        paving = paving_from_point_sets(2, 1, [[(2, 0), (1, 1)], [(1, 1), (0, 2)]])
        walls = shared_walls(paving)
        assert walls == [(0, 1, (1,), 1)]

    def test_finest_2_2_wall_count(self):
        from chtoucakit.pavings import enumerate_admissible_pavings

        finest = max(enumerate_admissible_pavings(2, 2), key=lambda p: len(p.paves))
        walls = shared_walls(finest)
        # three interior unit edges (the central triangle's sides)
        assert len(walls) == 3


class TestGluingCondition:
    def test_stratum_families_glue(self):
        rng = random.Random(21)
        for field in (QQ, GF(5, 1)):
            for r in (2, 3):
                for _ in range(5):
                    d = rand_stratum_data(field, rng, r)
                    fam = family_from_stratum(d)
                    assert check_dimension_condition(fam).ok, (field.name, r, d.cuts)
                    assert check_gluing_condition(fam).ok, (field.name, r, d.cuts)

    def test_corrupted_family_fails(self):
        field = GF(5, 1)
        one, zero = field.one(), field.zero()
        d = StratumData(
            field,
            2,
            (1,),
            vfilt=(((one, zero),),),
            wfilt=(((one, zero),),),
            v=(((one,),), ((one,),)),
            scales=(one, one),
            free_lams=(),
        )
        fam = family_from_stratum(d)
        w_bad = list(fam.w)
        w_bad[-1] = tuple(
            tuple(one if i == j else zero for j in range(4)) for i in range(2)
        )
        bad = GluedGraphFamily(field, fam.paving, tuple(w_bad))
        assert not (check_dimension_condition(bad).ok and check_gluing_condition(bad).ok)

    def test_diagonal_change_of_basis_invariance(self):
        """Simultaneous GL(V) change of basis preserves both checks."""
        rng = random.Random(22)
        field = GF(5, 1)
        for _ in range(5):
            d = rand_stratum_data(field, rng, 3)
            fam = family_from_stratum(d)
            g = None
            while g is None or fmat_inverse(field, g) is None:
                g = [
                    [field.from_index(rng.randrange(field.order)) for _ in range(3)]
                    for _ in range(3)
                ]
            new_w = []
            for m in fam.w:
                rows = []
                for row in m:
                    out = []
                    for block in range(2):
                        seg = row[3 * block : 3 * block + 3]
                        for j in range(3):
                            acc = field.zero()
                            for t in range(3):
                                acc = field.add(acc, field.mul(seg[t], g[t][j]))
                            out.append(acc)
                    rows.append(tuple(out))
                new_w.append(tuple(rows))
            moved = GluedGraphFamily(field, fam.paving, tuple(new_w))
            assert check_dimension_condition(moved).ok
            assert check_gluing_condition(moved).ok


class TestExhaustiveRankOne:
    @pytest.mark.parametrize("q", [2, 3])
    def test_trivial_paving_characterization(self, q):
        field = GF(q, 1)
        triv = trivial_paving(1, 1)
        passing = []
        for a in range(q):
            for b in range(q):
                if a == b == 0:
                    continue
                fam = GluedGraphFamily(
                    field, triv, (((field.from_index(a), field.from_index(b)),),)
                )
                if check_dimension_condition(fam).ok and check_gluing_condition(fam).ok:
                    passing.append((a, b))
                    assert a != 0 and b != 0
        # each line counted (q-1) times by scaling; graphs of GL_1 = q-1 lines
        assert len(passing) == (q - 1) ** 2
