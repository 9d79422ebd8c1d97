import random

import pytest

from gkgrowth._ratio import QQ
from gkgrowth.errors import (
    NegativeExponentError,
    PolyParseError,
    UnknownVariableError,
)
from gkgrowth.parse import parse_entry, parse_poly_expr, parse_ratfunc_expr
from gkgrowth.poly import Poly, PolyRing, RatFuncField, RationalField

R2 = PolyRing(("x1", "x2"))
F = RatFuncField("x")


def test_binomial_square():
    value = parse_poly_expr("x1^2 - 2*x1*x2 + x2^2", R2)
    assert value == parse_poly_expr("(x1 - x2)^2", R2)


def test_rational_literal():
    value = parse_poly_expr("3/2", R2)
    assert value.is_constant and value.constant_value() == QQ(3, 2)
    assert parse_poly_expr("3/2*x1", R2) == parse_poly_expr("x1*3/2", R2)


def test_negative_exponent_rejected():
    with pytest.raises(NegativeExponentError) as err:
        parse_poly_expr("x1^(-1)", R2)
    assert err.value.position == 4
    with pytest.raises(NegativeExponentError):
        parse_poly_expr("x1^-1", R2)


def test_syntax_errors_carry_positions():
    with pytest.raises(PolyParseError) as err:
        parse_poly_expr("x1 + ", R2)
    assert err.value.position == 5
    with pytest.raises(PolyParseError):
        parse_poly_expr("2x1", R2)  # implicit multiplication
    with pytest.raises(PolyParseError):
        parse_poly_expr("x1 @ x2", R2)
    with pytest.raises(PolyParseError):
        parse_poly_expr("(x1 + x2", R2)


def test_unknown_variable():
    with pytest.raises(UnknownVariableError):
        parse_poly_expr("x1 + y", R2)
    with pytest.raises(UnknownVariableError):
        parse_ratfunc_expr("y + 1", F)


def test_whitespace_insensitive():
    a = parse_poly_expr("x1^2-2*x1*x2+x2^2", R2)
    b = parse_poly_expr("  x1 ^ 2 -  2 * x1 * x2 + x2 ^ 2 ", R2)
    assert a == b


def test_precedence():
    # ^ binds tighter than unary minus, which binds tighter than *.
    assert parse_poly_expr("-x1^2", R2) == -(R2.gen(0) ** 2)
    assert parse_poly_expr("2*-3", R2) == R2.constant(-6)
    assert parse_poly_expr("1 - 2 - 3", R2) == R2.constant(-4)
    with pytest.raises(PolyParseError):
        parse_poly_expr("2^3^1", R2)  # exponents are integer literals


def test_division_only_in_ratfunc_mode():
    with pytest.raises(PolyParseError):
        parse_poly_expr("x1/x2", R2)
    value = parse_ratfunc_expr("(x + 1)/(x - 1)", F)
    assert value.num == parse_poly_expr("x + 1", F.poly_ring)
    assert parse_ratfunc_expr("x^(-1)", F) == F.one / F.gen()
    with pytest.raises(PolyParseError):
        parse_ratfunc_expr("1/(x - x)", F)


def test_print_parse_round_trip_random():
    rng = random.Random(3)
    for _ in range(80):
        terms = {}
        for _ in range(rng.randint(0, 5)):
            mono = (rng.randint(0, 3), rng.randint(0, 3))
            c = QQ(rng.randint(-9, 9), rng.randint(1, 4))
            if c:
                terms[mono] = c
        value = Poly(R2, terms)
        assert parse_poly_expr(str(value), R2) == value


def test_ratfunc_print_round_trip():
    value = parse_ratfunc_expr("(x^2 + 3/2)/(x^3 - x + 1)", F)
    assert parse_ratfunc_expr(str(value), F) == value


def test_parse_entry_dispatch():
    assert parse_entry("3/2", RationalField()) == QQ(3, 2)
    assert parse_entry("x1*x2", R2) == R2.gen(0) * R2.gen(1)
    assert parse_entry("1/x", F) == F.one / F.gen()
