from math import comb

import pytest

from loophom.exactlin import GF2, QQ, FieldSpec
from loophom.spaces import (SpaceError, SpacePresentation, cp_quotient, dumps,
                            loads, rp_quotient, sphere, validate)


def test_rp_reduced_coproduct_frozen():
    rp2 = rp_quotient(2, GF2, 14)
    assert rp2.coproduct["e_6"] == (("e_3", "e_3", 1),)
    assert rp2.coproduct["e_5"] == ()


def test_rp_steenrod_frozen():
    rp2 = rp_quotient(2, GF2, 14)
    # Sq^2 e_5 = C(3,2) e_3 = e_3
    assert rp2.steenrod[(2, "e_5")] == (1, "e_3")


def test_rp_needs_char2():
    with pytest.raises(SpaceError):
        rp_quotient(2, FieldSpec(3))


def test_cp_reduced_coproduct_and_modp_action():
    cp = cp_quotient(2, FieldSpec(3), 24)
    assert cp.coproduct["c_6"] == (("c_3", "c_3", 1),)
    # P^1 c_4 = C(2,1) c_2, but c_2 is collapsed
    assert (1, "c_4") not in cp.steenrod
    # P^1 c_5 = C(3,1) c_3 = 3 c_3 = 0 mod 3
    assert (1, "c_5") not in cp.steenrod
    # P^1 c_6 = C(4,1) c_4 = c_4 mod 3
    assert cp.steenrod[(1, "c_6")] == (1, "c_4")


def test_cp_char0_has_no_action():
    assert not cp_quotient(2, QQ, 20).steenrod


def test_sphere_trivial():
    s = sphere(3, GF2)
    assert s.generators == (("x", 3),)
    assert s.coproduct["x"] == ()
    assert not s.steenrod
    ok, _ = validate(s, 10)
    assert ok


def test_validate_passes_on_families():
    assert validate(rp_quotient(2, GF2, 14), 12)[0]
    assert validate(cp_quotient(2, FieldSpec(3), 24), 24)[0]


def test_validate_catches_corruption():
    rp2 = rp_quotient(2, GF2, 14)
    bad_cop = dict(rp2.coproduct)
    bad_cop["e_6"] = ()  # drop a coproduct term
    bad = SpacePresentation("rp", GF2, rp2.generators, bad_cop, rp2.steenrod,
                            2, 14)
    ok, msg = validate(bad, 12)
    assert not ok and msg


def test_lucas_criterion_on_rp_action():
    rp2 = rp_quotient(2, GF2, 16)
    for i in range(3, 17):
        for j in range(1, i):
            stored = (j, f"e_{i}") in rp2.steenrod
            expected = i - j > 2 and comb(i - j, j) % 2 == 1
            assert stored == expected


def test_truncation_naturality():
    rp2 = rp_quotient(2, GF2, 14)
    rp3 = rp_quotient(3, GF2, 14)
    for label, pairs in rp3.coproduct.items():
        kept = tuple(p for p in rp2.coproduct[label]
                     if "e_3" not in (p[0], p[1]))
        assert pairs == kept
    for key, val in rp3.steenrod.items():
        assert rp2.steenrod.get(key) == val or val[1] == "e_3"


def test_text_roundtrip():
    rp2 = rp_quotient(2, GF2, 12)
    back = loads(dumps(rp2))
    assert back.generators == rp2.generators
    assert back.coproduct == rp2.coproduct
    assert back.steenrod == rp2.steenrod
    assert back.field == rp2.field
    assert back.connectivity == rp2.connectivity


def test_loads_rejects_unknown_generators():
    with pytest.raises(SpaceError):
        loads("field 2\ngenerator a 3\ncoproduct a a b 1\n")
