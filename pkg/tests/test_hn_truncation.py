import random
from fractions import Fraction

import pytest

from chtoucakit.errors import (
    NoDominantChain,
    NotAChain,
    NotConvexEnough,
)
from chtoucakit.hn_truncation import (
    Polygon,
    SubobjectLattice,
    SubobjectRecord,
    deg_alpha,
    hn_polygon,
    is_mu_convex,
    is_truncation_parameter,
    polygon_leq,
    polygon_of_filtration,
    split_truncation,
)


def simple_lattice(r, middles, order=None):
    records = [SubobjectRecord("0", 0, 0, 0), SubobjectRecord("E", r, 0, 0)]
    records += [SubobjectRecord(mid_id, rank, d0, d1) for mid_id, rank, d0, d1 in middles]
    return SubobjectLattice.build(r, records, order or [])


class TestDegAlpha:
    def test_endpoints(self):
        rec = SubobjectRecord("F", 1, 2, 4)
        assert deg_alpha(rec, 0) == 2
        assert deg_alpha(rec, 1) == 4
        assert deg_alpha(rec, Fraction(1, 2)) == 3


class TestPolygonOfFiltration:
    def test_trivial_chain_zero(self):
        lat = simple_lattice(2, [])
        p = polygon_of_filtration(lat, ["0", "E"], 0)
        assert p.values == (Fraction(0),) * 3

    def test_displayed_formula(self):
        lat = simple_lattice(2, [("F", 1, 5, 5)])
        p = polygon_of_filtration(lat, ["0", "F", "E"], Fraction(1, 2))
        assert p.values == (Fraction(0), Fraction(5), Fraction(0))

    def test_interpolation(self):
        records = [
            SubobjectRecord("0", 0, 0, 0),
            SubobjectRecord("F", 2, 4, 4),
            SubobjectRecord("E", 3, 3, 3),
        ]
        lat = SubobjectLattice.build(3, records, [("0", "F"), ("F", "E")])
        p = polygon_of_filtration(lat, ["0", "F", "E"], 0)
        assert p.values == (Fraction(0), Fraction(1), Fraction(2), Fraction(0))

    def test_not_a_chain(self):
        lat = simple_lattice(3, [("A", 1, 1, 1), ("B", 2, 1, 1)])
        with pytest.raises(NotAChain):
            polygon_of_filtration(lat, ["0", "B", "A", "E"], 0)


class TestHnPolygon:
    def test_trivial(self):
        lat = simple_lattice(2, [])
        polygon, chain = hn_polygon(lat, 0)
        assert polygon.values == (Fraction(0),) * 3
        assert chain == ("0", "E")

    def test_positive_middle_selected(self):
        lat = simple_lattice(2, [("F", 1, 5, 5)])
        polygon, chain = hn_polygon(lat, 0)
        assert chain == ("0", "F", "E")
        assert polygon.values[1] == 5

    def test_negative_middle_skipped(self):
        lat = simple_lattice(2, [("F", 1, -5, -5)])
        polygon, chain = hn_polygon(lat, 0)
        assert chain == ("0", "E")
        assert polygon.values == (Fraction(0),) * 3

    def test_crossing_raises(self):
        lat = simple_lattice(3, [("A", 1, 3, 3), ("B", 2, 4, 4)])
        with pytest.raises(NoDominantChain):
            hn_polygon(lat, 0)

    def test_equal_slope_tie_raises(self):
        # two incomparable middles with identical polygons: two distinct
        # coarsest achievers
        lat = simple_lattice(2, [("A", 1, 5, 5), ("B", 1, 5, 5)])
        with pytest.raises(NoDominantChain):
            hn_polygon(lat, 0)

    def test_dominates_all_chains(self):
        from chtoucakit.hn_truncation import _all_chains

        rng = random.Random(13)
        for _ in range(40):
            r = rng.randint(2, 4)
            mids = []
            ranks = sorted(rng.sample(range(1, r), rng.randint(0, r - 1)))
            for i, rank in enumerate(ranks):
                mids.append((f"m{i}", rank, rng.randint(-6, 6), rng.randint(-6, 6)))
            order = [(f"m{i}", f"m{j}") for i in range(len(ranks)) for j in range(i + 1, len(ranks))]
            lat = simple_lattice(r, mids, order)
            polygon, chain = hn_polygon(lat, Fraction(1, 3))
            for other in _all_chains(lat):
                assert polygon_leq(polygon_of_filtration(lat, other, Fraction(1, 3)), polygon)


class TestPolygonLeq:
    def test_reflexive_antisymmetric_transitive(self):
        a = Polygon.from_values([0, 1, 0])
        b = Polygon.from_values([0, 2, 0])
        c = Polygon.from_values([0, 3, 0])
        assert polygon_leq(a, a)
        assert polygon_leq(a, b) and polygon_leq(b, c) and polygon_leq(a, c)
        assert not (polygon_leq(a, b) and polygon_leq(b, a))

    def test_zero_below_truncation_parameters(self):
        zero = Polygon.from_values([0, 0, 0])
        assert polygon_leq(zero, Polygon.from_values([0, 5, 0]))

    def test_counterexample(self):
        assert not polygon_leq(Polygon.from_values([0, 5, 0]), Polygon.from_values([0, 4, 0]))


class TestMuConvex:
    def test_quadratic_profile(self):
        for r in (2, 3, 4, 5):
            vals = [Fraction(rho * (r - rho)) for rho in range(r + 1)]
            p = Polygon.from_values(vals)
            assert is_mu_convex(p, 2)
            assert not is_mu_convex(p, Fraction(5, 2))

    def test_zero_polygon(self):
        p = Polygon.from_values([0, 0, 0])
        assert is_mu_convex(p, 0)
        assert not is_mu_convex(p, Fraction(1, 100))

    def test_spec_example(self):
        p = Polygon.from_values([0, 4, 4, 0])
        assert is_mu_convex(p, 4)
        assert not is_mu_convex(p, Fraction(41, 10))


class TestSplitTruncation:
    def test_single_block(self):
        p = Polygon.from_values([0, 4, 4, 0])
        res = split_truncation(p, 7, [])
        assert res.d_parts == (7,)
        assert res.p_parts[0].r == 3

    def test_hand_example_r3(self):
        p = Polygon.from_values([0, 4, 4, 0])
        res = split_truncation(p, 0, [1])
        assert res.d_parts == (4, -5)
        assert sum(res.d_parts) == 0 - 2 + 1
        assert res.p_parts[1].values == (Fraction(0), Fraction(3, 2), Fraction(0))

    def test_hand_example_r4(self):
        p = Polygon.from_values([0, 3, 4, 3, 0])
        res = split_truncation(p, 2, [2])
        assert res.d_parts == (5, -4)
        assert sum(res.d_parts) == 2 - 2 + 1

    def test_not_convex_enough(self):
        p = Polygon.from_values([0, 1, 1, 0])  # drops of 1 only
        with pytest.raises(NotConvexEnough):
            split_truncation(p, 0, [1])

    def test_degree_identity_random(self):
        rng = random.Random(14)
        for _ in range(200):
            r = rng.randint(2, 8)
            drops = [Fraction(2) + Fraction(rng.randint(0, 6)) for _ in range(r - 1)]
            raw = [Fraction(0)]
            acc = Fraction(0)
            for d in drops:
                acc += d
                raw.append(acc)
            shift = Fraction(sum(raw[rho] for rho in range(r)), r)
            vals = [Fraction(0)]
            for rho in range(r):
                vals.append(vals[-1] + shift - raw[rho])
            p = Polygon(r, tuple(vals))
            assert is_truncation_parameter(p)
            d = rng.randint(-20, 20)
            cuts = sorted(rng.sample(range(1, r), rng.randint(0, r - 1)))
            res = split_truncation(p, d, cuts)
            assert sum(res.d_parts) == d - (len(cuts) + 1) + 1
            for part in res.p_parts:
                assert is_truncation_parameter(part)
