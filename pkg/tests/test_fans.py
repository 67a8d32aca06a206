import random
from fractions import Fraction

import pytest

from chtoucakit.errors import TooLarge
from chtoucakit.fans import (
    Cone,
    Fan,
    dual_cone,
    is_face,
    monoid_generators,
    orthant_fan,
    proper_faces,
    tau_sequence_check,
    torus_sequence_check,
    verify_fan,
)


def test_zero_cone_and_full_dual():
    z = Cone.zero(2)
    assert z.rays == () and z.lin == ()
    d = dual_cone(z)
    assert d.lin == ((1, 0), (0, 1))
    assert d.rays == ()


def test_orthant_self_dual():
    orth = Cone.from_generators(2, [(1, 0), (0, 1)])
    assert dual_cone(orth) == orth
    assert sorted(orth.rays) == [(0, 1), (1, 0)]


def test_dual_of_skew_ray():
    ray = Cone.from_generators(2, [(1, 2)])
    d = dual_cone(ray)
    assert d.ineqs == ((1, 2),)
    assert d.lin == ((2, -1),)


def test_double_dual_identity():
    rng = random.Random(3)
    for _ in range(40):
        dim = rng.randint(1, 4)
        gens = [tuple(rng.randint(-3, 3) for _ in range(dim)) for _ in range(rng.randint(0, 4))]
        c = Cone.from_generators(dim, gens)
        assert dual_cone(dual_cone(c)) == c


def test_vrep_hrep_round_trip():
    rng = random.Random(9)
    for _ in range(40):
        dim = rng.randint(1, 4)
        gens = [tuple(rng.randint(-3, 3) for _ in range(dim)) for _ in range(rng.randint(1, 4))]
        c = Cone.from_generators(dim, gens)
        again = Cone.from_hrep(dim, c.ineqs, c.eqs)
        assert again == c


def test_face_examples():
    orth = Cone.from_generators(2, [(1, 0), (0, 1)])
    assert is_face(Cone.zero(2), orth)
    assert is_face(Cone.from_generators(2, [(1, 0)]), orth)
    assert not is_face(Cone.from_generators(2, [(1, 1)]), orth)
    assert is_face(orth, orth)


def test_proper_faces_of_orthant():
    orth = Cone.from_generators(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    faces = proper_faces(orth)
    assert len(faces) == 7  # 3 facets, 3 rays, apex


def test_orthant_fan_passes():
    rep = verify_fan(orthant_fan(2))
    assert rep.ok
    rep3 = verify_fan(orthant_fan(3))
    assert rep3.ok


def test_fan_missing_face_fails():
    # orthant with one boundary ray omitted
    cones = (
        Cone.zero(2),
        Cone.from_generators(2, [(1, 0)]),
        Cone.from_generators(2, [(1, 0), (0, 1)]),
    )
    rep = verify_fan(Fan(2, cones))
    assert not rep.ok
    assert any(f[0] == "face_missing" for f in rep.failures)


def test_overlapping_cones_fail():
    cones = (
        Cone.zero(2),
        Cone.from_generators(2, [(1, 0)]),
        Cone.from_generators(2, [(0, 1)]),
        Cone.from_generators(2, [(1, 1)]),
        Cone.from_generators(2, [(1, 0), (0, 1)]),
        Cone.from_generators(2, [(1, 1), (0, 1)]),
    )
    rep = verify_fan(Fan(2, cones))
    assert not rep.ok


def test_monoid_orthant():
    gens = monoid_generators(Cone.from_generators(2, [(1, 0), (0, 1)]))
    assert gens == [(0, 1), (1, 0)]


def test_monoid_half_plane():
    # dual of the diagonal ray is a half-plane whose monoid needs the
    # boundary units plus one interior generator
    gens = monoid_generators(Cone.from_generators(2, [(1, 1)]))
    assert gens == [(-1, 1), (0, 1), (1, -1)]


def test_monoid_singular_cone_needs_extra_generator():
    gens = monoid_generators(Cone.from_generators(2, [(1, 0), (1, 2)]))
    assert len(gens) > 2
    assert gens == [(0, 1), (1, 0), (2, -1)]


def test_monoid_rank_cap():
    with pytest.raises(TooLarge):
        monoid_generators(Cone.zero(5))


@pytest.mark.parametrize(
    "r,n,dim",
    [(2, 1, 1), (3, 1, 2), (4, 1, 3), (1, 3, 0), (2, 2, 3)],
)
def test_torus_sequence(r, n, dim):
    rep = torus_sequence_check(r, n)
    assert rep.ok, rep.checks
    assert rep.dim_torus == dim


@pytest.mark.parametrize("r,q,size", [(1, 2, 1), (2, 2, 3), (3, 3, 6)])
def test_tau_sequence(r, q, size):
    rep = tau_sequence_check(r, q)
    assert rep.ok, rep.checks
    assert rep.s_tau_size == size
    assert rep.dim_torus == size - 1
