# test_frontend_parser.py
from fractions import Fraction as Fr

import pytest

from algebra.polynomial import MultiPoly, variables
from algebra.scalars import I_UNIT
from frontend import ExprSyntaxError, UnknownVariable, parse_expr, parse_polynomial, unparse
from tests.conftest import make_poly

XYZ = ["x1", "x2", "x3"]


def test_quadratic_family():
    f = parse_polynomial("x3^2 + x2^2*x3 + x1^4", XYZ)
    assert f == make_poly(3, {(0, 0, 2): 1, (0, 2, 1): 1, (4, 0, 0): 1})


def test_complex_pair_with_imaginary_unit():
    x1, x2, x3 = variables(3)
    expected = (x3 - x1) * (x3 - x1 + x1 ** 2 * x2 - x1 * x2 ** 2 + x1 * x2 * I_UNIT)
    f = parse_polynomial("(x3-x1)*(x3-x1+x1^2*x2-x1*x2^2+i*x1*x2)", XYZ)
    assert f == expected
    assert not f.is_real()


def test_fractional_exponent_is_rejected():
    with pytest.raises(ExprSyntaxError, match="整数"):
        parse_polynomial("x1^(1/2)", XYZ)


def test_negative_exponent_is_rejected():
    with pytest.raises(ExprSyntaxError, match="不能为负"):
        parse_polynomial("x1^-1", XYZ)


def test_unknown_variable():
    with pytest.raises(UnknownVariable) as info:
        parse_polynomial("x1 + w", XYZ)
    assert info.value.name == "w"
    assert info.value.details["position"] == 5


@pytest.mark.parametrize("text, position", [
    ("x1 +", 4),
    ("(x1", 3),
    ("x1 $ x2", 3),
    ("x1 x2", 3),
    ("", 0),
])
def test_syntax_errors_carry_positions(text, position):
    with pytest.raises(ExprSyntaxError) as info:
        parse_polynomial(text, XYZ)
    assert info.value.position == position
    assert f"位置 {position}" in str(info.value)


def test_aliases_and_literals():
    assert parse_polynomial("x^2 + y*z", XYZ) == make_poly(3, {(2, 0, 0): 1, (0, 1, 1): 1})
    assert parse_polynomial("x1*x2", ["x", "y"]) == make_poly(2, {(1, 1): 1})
    assert parse_polynomial("0.25*x1 + 3/4", XYZ) == make_poly(3, {(1, 0, 0): Fr(1, 4), (0, 0, 0): Fr(3, 4)})


def test_declared_i_is_a_variable():
    f = parse_polynomial("i^2 - t", ["t", "i"])
    assert f == make_poly(2, {(0, 2): 1, (1, 0): -1})


def test_precedence():
    assert parse_polynomial("-x1^2", XYZ) == make_poly(3, {(2, 0, 0): -1})
    assert parse_polynomial("2^3^2", XYZ) == MultiPoly.constant(3, 512)
    assert parse_polynomial("2*x1 - x1 - x1", XYZ).is_zero()
    assert parse_polynomial("x1 - x2 + x3", XYZ) == make_poly(3, {(1, 0, 0): 1, (0, 1, 0): -1, (0, 0, 1): 1})
    assert parse_polynomial("x1^0", XYZ) == MultiPoly.constant(3, 1)


def test_division_only_by_nonzero_constants():
    assert parse_polynomial("x1/2", XYZ) == make_poly(3, {(1, 0, 0): Fr(1, 2)})
    assert parse_polynomial("x1/(2*i)", XYZ) == make_poly(3, {(1, 0, 0): -I_UNIT / 2})
    with pytest.raises(ExprSyntaxError, match="非零常数"):
        parse_polynomial("x1/x2", XYZ)
    with pytest.raises(ExprSyntaxError, match="非零常数"):
        parse_polynomial("x1/(x2 - x2)", XYZ)


def test_unparse_drops_redundant_parentheses():
    assert unparse(parse_expr("((x1) + (x2*x3))", XYZ)) == "x1 + x2*x3"
    assert unparse(parse_expr("(x1 - x2)^2", XYZ)) == "(x1 - x2)^2"
    assert unparse(parse_expr("x1 - (x2 - x3)", XYZ)) == "x1 - (x2 - x3)"
    assert unparse(parse_expr("(3/4)^2", XYZ)) == "(3/4)^2"


def _random_expression(rng, depth):
    if depth == 0 or rng.random() < 0.25:
        choice = int(rng.integers(0, 4))
        if choice == 0:
            return XYZ[int(rng.integers(0, 3))]
        if choice == 1:
            return str(int(rng.integers(0, 10)))
        if choice == 2:
            return f"{int(rng.integers(1, 7))}/{int(rng.integers(1, 7))}"
        return "i"
    a = _random_expression(rng, depth - 1)
    b = _random_expression(rng, depth - 1)
    form = int(rng.integers(0, 6))
    if form == 0:
        return f"({a}) + ({b})"
    if form == 1:
        return f"({a}) - ({b})"
    if form == 2:
        return f"({a})*({b})"
    if form == 3:
        return f"-({a})"
    if form == 4:
        return f"({a})^{int(rng.integers(0, 3))}"
    return f"({a})/{int(rng.integers(1, 5))}"


def test_unparse_round_trip(rng):
    for _ in range(200):
        text = _random_expression(rng, 4)
        expr = parse_expr(text, XYZ)
        again = unparse(expr)
        assert parse_polynomial(again, XYZ) == parse_polynomial(text, XYZ), (text, again)
