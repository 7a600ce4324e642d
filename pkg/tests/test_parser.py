import pytest

from holomult.parser import ParseError, parse_expr
from holomult.poly import CPoly
from holomult.scalars import GaussianRational

from conftest import random_cpoly


def test_bracket_polynomial():
    p = parse_expr("z1*z3 - 2*z2", 3)
    z1, z2, z3 = (CPoly.var(3, k) for k in (1, 2, 3))
    assert p == z1 * z3 - z2.scale(2)


def test_casimir_polynomial():
    p = parse_expr("(z1)^2 + 4*z2*z3", 3)
    z1, z2, z3 = (CPoly.var(3, k) for k in (1, 2, 3))
    assert p == z1 * z1 + (z2 * z3).scale(4)


def test_imaginary_unit():
    assert parse_expr("i^2 + 1", 1).is_zero()
    assert parse_expr("i", 0) == CPoly.const(0, GaussianRational(0, 1))


def test_rationals_and_unary_minus():
    assert parse_expr("3/2", 0) == CPoly.const(0, GaussianRational.coerce(3) / 2)
    assert parse_expr("-z1", 1) == -CPoly.var(1, 1)
    assert parse_expr("-3/4*i", 0) == CPoly.const(0, GaussianRational(0, -1) * 3 / 4)
    assert parse_expr("(-1)", 0) == CPoly.const(0, -1)


def test_whitespace_insignificant():
    assert parse_expr(" z1 * z2 ", 2) == parse_expr("z1*z2", 2)


def test_syntax_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        parse_expr("z1 + ", 2)
    assert err.value.pos == 5
    with pytest.raises(ParseError) as err:
        parse_expr("z1 @ z2", 2)
    assert err.value.pos == 3
    with pytest.raises(ParseError) as err:
        parse_expr("(z1", 2)
    assert err.value.pos == 3


def test_no_implicit_multiplication():
    with pytest.raises(ParseError):
        parse_expr("2 z1", 2)
    with pytest.raises(ParseError):
        parse_expr("z1 z2", 2)


def test_exponent_must_be_nonnegative_integer():
    with pytest.raises(ParseError):
        parse_expr("z1^-1", 1)
    with pytest.raises(ParseError):
        parse_expr("z1^i", 1)


def test_variable_index_out_of_range():
    with pytest.raises(ParseError) as err:
        parse_expr("z4", 3)
    assert "z4" in str(err.value)
    with pytest.raises(ParseError):
        parse_expr("z0", 3)


def test_variable_without_index():
    with pytest.raises(ParseError):
        parse_expr("z + 1", 2)


def test_decimal_literals_rejected():
    with pytest.raises(ParseError) as err:
        parse_expr("1.5*z1", 2)
    assert "p/q" in str(err.value)


def test_division_only_in_literals():
    with pytest.raises(ParseError):
        parse_expr("z1/2", 2)
    with pytest.raises(ParseError):
        parse_expr("1/0", 2)


def test_round_trip_canonical_form(rng):
    for _ in range(60):
        nvars = rng.choice([1, 2, 3, 4])
        p = random_cpoly(rng, nvars)
        text = p.format()
        assert parse_expr(text, nvars) == p
