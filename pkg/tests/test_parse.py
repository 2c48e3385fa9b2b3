"""Expression parser: grammar corners and failure modes.

The printer emits canonical text and the parser must read it back; the
roundtrip property itself lives in test_poly.py. Here we pin the grammar.
"""

import pytest

from starweyl import Generators, ParseError, poly_from_text, scalar_from_text

G = Generators(("q", "p"))


def parse(s):
    return poly_from_text(s, G)


def test_precedence_and_grouping():
    assert parse("q + p*q") == parse("q + (p*q)")
    assert parse("(q + p)*q") != parse("q + p*q")
    assert parse("-q^2") == parse("-(q^2)")
    assert parse("2*q + 3*q") == parse("5*q")


def test_rational_literals():
    assert parse("1/2 * q") == parse("(1/2)*q")
    assert parse("3/6*q") == parse("(1/2)*q")


def test_imaginary_unit_and_hbar():
    assert parse("i^2") == parse("-1")
    assert parse("i*i*q") == parse("-q")
    assert str(parse("h*q - h*q")) == "0"


def test_double_negation_and_subtraction():
    assert parse("q - - p") == parse("q + p")
    assert parse("-(q - p)") == parse("p - q")


def test_binomial_expansion():
    assert str(parse("(q+p)^3")) == "q^3 + 3*q^2*p + 3*q*p^2 + p^3"


def test_zeroth_power_is_one():
    assert parse("q*p^0") == parse("q")
    assert parse("(q+p)^0") == parse("1")


@pytest.mark.parametrize(
    "src",
    [
        "q^2^3",  # chained powers need parentheses; exponents are literals
        "2q",  # implicit multiplication is not a thing
        "q / 2",  # division only inside rational literals
        "q +",
        "(q",
        "q^(1+1)",
        "q^-2",
        "w",  # unknown identifier
        "q..p",
        "",
        "3.5*q",  # no floats in the exact grammar
    ],
)
def test_rejected_inputs(src):
    with pytest.raises(ParseError):
        parse(src)


def test_error_carries_position():
    with pytest.raises(ParseError) as exc:
        parse("q + w")
    assert "column 5" in str(exc.value)


def test_scalar_parser_rejects_generators():
    with pytest.raises(ParseError):
        scalar_from_text("q + 1")
    s = scalar_from_text("1 - (1/3)*i*h^2")
    assert float(s.coefficient(2).im) == pytest.approx(-1 / 3)


def test_whitespace_insensitive():
    assert parse(" q\t+  p ") == parse("q+p")
