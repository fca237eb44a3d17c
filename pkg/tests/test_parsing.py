import random
from fractions import Fraction

import pytest

from smithalg.exactpoly import Poly
from smithalg.parsing import ParseError, normalize, parse_pbw, parse_poly
from smithalg.pbw import PBWElement
from smithalg.verify import random_pbw

from conftest import algebra


def test_normalize_examples():
    alg = algebra("2*H")
    assert normalize("E*F - F*E", alg) == PBWElement.from_h_poly(Poly((0, 2)))
    assert normalize("H", alg) == PBWElement.monomial(0, 1, 0)
    assert not normalize("(E*F)*H - E*(F*H)", alg)
    assert normalize("Omega", alg) == alg.casimir


def test_parse_preserves_order():
    tree = parse_pbw("E*F")
    assert tree.kind == "mul"
    assert [a.args[0] for a in tree.args] == ["E", "F"]
    alg = algebra("1")
    assert normalize("E*F", alg) != normalize("F*E", alg)


def test_precedence_and_signs():
    alg = algebra("0")
    assert normalize("-H^2", alg) == PBWElement.monomial(0, 2, 0, -1)
    assert normalize("2 - -H", alg) == PBWElement({(0, 0, 0): 2, (0, 1, 0): 1})
    assert normalize("3/4*F^0", alg) == PBWElement.scalar(Fraction(3, 4))


@pytest.mark.parametrize(
    "text, pos",
    [("E F", 2), ("E*", 2), ("(E + F", 6), ("H^x", 2), ("H^1/2", 2), ("X + 1", 0), ("1/0", 0), ("E $ F", 2)],
)
def test_syntax_errors_report_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_pbw(text)
    assert info.value.pos == pos
    assert info.value.expected


def test_poly_variables():
    assert parse_poly("(Omega-1)^2", "Omega") == Poly((1, -2, 1))
    with pytest.raises(ParseError):
        parse_poly("H", "Omega")
    assert parse_poly("x^2 - x", ("x",)) == Poly((0, -1, 1))


def test_roundtrip_random_pbw():
    rng = random.Random(7)
    for f_text in ("0", "2*H", "H^3 - 1"):
        alg = algebra(f_text)
        for _ in range(34):
            x = random_pbw(rng, alg, 8, n_terms=rng.randint(0, 5))
            assert normalize(str(x), alg) == x


def test_roundtrip_random_poly():
    rng = random.Random(11)
    for _ in range(100):
        p = Poly([Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(rng.randint(0, 7))])
        assert parse_poly(p.format("H")) == p
        assert parse_poly(p.format("Omega"), "Omega") == p
