import json
from fractions import Fraction

import pytest

from legheights import FamilySpec, builtin_family_x2, on_curve, resolve_family
from legheights.errors import InvalidInput
from legheights.families import Poly1, RationalFunction, parse_poly


# -- polynomial grammar ------------------------------------------------------


def test_parse_basic():
    p = parse_poly("2 - 2*t^2")
    assert p.coeffs == [2, 0, -2]
    assert p(Fraction(3)) == -16


def test_parse_products_and_parens():
    p = parse_poly("(1 + t)*(1 - t)")
    assert p.coeffs == [1, 0, -1]
    q = parse_poly("-3*t^3 + t")
    assert q(2) == -22


def test_parse_implicit_product():
    assert parse_poly("2t").coeffs == [0, 2]
    assert parse_poly("3(t+1)").coeffs == [3, 3]


def test_parse_errors():
    for bad in ("t +", "(t", "t^", "x", "1//2"):
        with pytest.raises(InvalidInput):
            RationalFunction.parse(bad)


def test_rational_function_eval_and_str():
    rf = RationalFunction.parse("(t^2 - 1) / (2*t)")
    assert rf(Fraction(3)) == Fraction(8, 6)
    assert rf.defined_at(Fraction(3))
    assert not rf.defined_at(0)
    assert "t" in str(rf)


def test_poly_str_roundtrips_through_parser():
    p = Poly1([-3, 0, 2, 5])
    assert parse_poly(str(p)).coeffs == p.coeffs


# -- family construction -------------------------------------------------------


def test_builtin_family_points():
    fam = builtin_family_x2()
    p2 = fam.point_at(2)
    assert p2.lam == Fraction(-6)
    assert p2.components[0].point.coords == (2, 4, 1)
    p3 = fam.point_at(3)
    assert p3.lam == Fraction(-16)
    assert p3.components[0].point.coords == (2, 6, 1)
    assert on_curve(p3.components[0].point, Fraction(-16))


def test_builtin_family_rejects_singular_parameters():
    fam = builtin_family_x2()
    for t in (1, -1):  # lambda = 0
        assert not fam.admissible(t)
        with pytest.raises(InvalidInput):
            fam.point_at(t)


def test_family_identity_validation():
    with pytest.raises(InvalidInput):
        FamilySpec(
            [(RationalFunction.parse("2"), RationalFunction.parse("3*t"))],
            RationalFunction.parse("2 - 2*t^2"),
        )


def test_family_json_roundtrip(tmp_path):
    fam = builtin_family_x2()
    doc = fam.to_json_dict()
    assert doc["g"] == 1
    clone = FamilySpec.from_json_dict(doc)
    assert clone.point_at(5) == fam.point_at(5)
    path = tmp_path / "fam.json"
    path.write_text(json.dumps(doc))
    loaded = resolve_family(str(path))
    assert loaded.point_at(7) == fam.point_at(7)


def test_family_bad_documents(tmp_path):
    with pytest.raises(InvalidInput):
        FamilySpec.from_json_dict({"components": [{"x": "2"}], "lambda": "t"})
    with pytest.raises(InvalidInput):
        FamilySpec.from_json_dict(
            {"g": 2, "components": [{"x": "0", "y": "0"}], "lambda": "t"}
        )
    with pytest.raises(InvalidInput):
        resolve_family("builtin:nope")


def test_two_torsion_family_valid():
    fam = FamilySpec(
        [(RationalFunction.parse("0"), RationalFunction.parse("0"))],
        RationalFunction.parse("t"),
    )
    pt = fam.point_at(Fraction(1, 3))
    assert pt.components[0].point.coords == (0, 0, 1)


def test_g2_family():
    fam = FamilySpec(
        [
            (RationalFunction.parse("2"), RationalFunction.parse("2*t")),
            (RationalFunction.parse("0"), RationalFunction.parse("0")),
        ],
        RationalFunction.parse("2 - 2*t^2"),
    )
    pt = fam.point_at(4)
    assert pt.g == 2
    assert pt.lam == Fraction(-30)
