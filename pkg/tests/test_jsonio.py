import json
import random
from fractions import Fraction

from chtoucakit import jsonio
from chtoucakit.fans import Cone
from chtoucakit.fields import GF, QQ
from chtoucakit.l_functions import SatakeParams
from chtoucakit.pavings import enumerate_admissible_pavings, paving_fan
from chtoucakit.complete_homs import complete_from_open
from chtoucakit.simplex_core import LatticeFunction


def test_frac_strings():
    assert jsonio.frac_str(Fraction(3)) == "3"
    assert jsonio.frac_str(Fraction(-5, 6)) == "-5/6"
    assert jsonio.parse_frac("7/2") == Fraction(7, 2)


def test_canonical_dump_is_sorted_and_versioned():
    text = jsonio.dumps_canonical({"b": 1, "a": 2})
    assert text.endswith("\n")
    payload = json.loads(text)
    assert payload["version"] == "chtouca-kit/1"
    assert text.index('"a"') < text.index('"b"')


def test_field_round_trip():
    for field in (QQ, GF(2, 2), GF(5, 1)):
        again = jsonio.field_from_json(jsonio.field_to_json(field))
        assert again == field or (field is QQ and again is QQ)


def test_lattice_function_round_trip():
    rng = random.Random(0)
    f = LatticeFunction(
        2, 2, tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(6))
    )
    again = jsonio.lattice_function_from_json(jsonio.lattice_function_to_json(f))
    assert again.values == f.values


def test_paving_round_trip():
    for paving in enumerate_admissible_pavings(2, 2):
        again = jsonio.paving_from_json(jsonio.paving_to_json(paving))
        assert again.key() == paving.key()


def test_cone_round_trip():
    c = Cone.from_generators(2, [(1, 0), (1, 2)])
    again = jsonio.cone_from_json(json.loads(json.dumps(jsonio.cone_to_json(c))))
    assert again == c


def test_fan_round_trip():
    fan = paving_fan(enumerate_admissible_pavings(2, 1))
    obj = jsonio.fan_to_json(fan)
    again = jsonio.fan_from_json(obj)
    assert set(again.cones) == set(fan.cones)
    assert obj["zero_included"] is True


def test_hom_round_trip():
    for field, lam in ((QQ, Fraction(5)), (GF(5, 1), GF(5, 1).from_index(3))):
        one = field.one()
        zero = field.zero()
        u1 = [[one, zero], [zero, one]]
        h = complete_from_open(field, u1, (lam,))
        again = jsonio.hom_from_json(jsonio.hom_to_json(h))
        assert again.eq(h)


def test_satake_round_trip():
    p = SatakeParams.from_coeffs([1, Fraction(-5, 2), 6])
    again = jsonio.satake_from_json(jsonio.satake_to_json(p))
    assert again.coeffs == p.coeffs
