from __future__ import annotations

import pytest

from tcbeta.errors import ParseError
from tcbeta.spaces import ConnSumRP, Power, Product, RP, Sphere, Surface, parse_space, power


@pytest.mark.parametrize(
    "text,expected",
    [
        ("S(3)", Sphere(3)),
        ("Sphere(2)", Sphere(2)),
        ("RP(4)", RP(4)),
        ("Power(RP(2),2)", Power(RP(2), 2)),
        (" Power ( S( 2 ) , 3 ) ", Power(Sphere(2), 3)),
        ("Surface(3)", Surface(3)),
        ("Surface(2,nonorientable)", Surface(2, False)),
        ("ConnSumRP(2,3)", ConnSumRP(2, 3)),
        ("Product(S(1),RP(2),S(3))", Product((Sphere(1), RP(2), Sphere(3)))),
    ],
)
def test_parse(text, expected):
    assert parse_space(text) == expected


def test_dims_and_connectivity():
    assert parse_space("Power(RP(2),2)").dim == 4
    assert Product((Sphere(2), Sphere(5))).dim == 7
    assert Product((Sphere(2), Sphere(5))).connectivity == 1
    assert Power(Sphere(4), 3).connectivity == 3
    assert RP(5).connectivity == 0
    assert Surface(4).dim == 2


@pytest.mark.parametrize("text", ["S(0)", "RP(0)", "S(3", "S(x)", "Torus(2)", "S(2) extra", "ConnSumRP(1,3)", ""])
def test_parse_errors(text):
    with pytest.raises(ParseError) as exc:
        parse_space(text)
    assert exc.value.expected
    assert 0 <= exc.value.pos <= len(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as exc:
        parse_space("Power(S(2);2)")
    assert exc.value.pos == 10


def test_roundtrip_text():
    for text in ["S(3)", "Power(RP(2),2)", "Product(S(1),RP(2))", "Surface(2,nonorientable)", "ConnSumRP(3,4)"]:
        assert str(parse_space(text)) == text


def test_power_one_collapses():
    assert power(Sphere(2), 1) == Sphere(2)
    with pytest.raises(ValueError):
        ConnSumRP(1, 2)
