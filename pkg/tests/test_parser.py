from fractions import Fraction

import pytest
from hypothesis import given, settings

from liouvillian.errors import ExprSyntaxError, ZeroDenominator
from liouvillian.parser import format_ratfun, parse_ratfun, parse_rational, tokenize
from liouvillian.poly import Poly
from liouvillian.ratfun import RatFun
from liouvillian.wilberforce import closed_form_r

from conftest import ratfuns

x = RatFun.x()


def test_heun_r_expression():
    r = parse_ratfun("(3*x^3 - 13*x^2 + 11*x + 3)/(4*x^2*(x-1)*(x-2)^2)")
    assert r == closed_form_r(1, 1)


def test_basic_values():
    assert parse_ratfun("x") == x
    assert parse_ratfun("2/x^2") == 2 / x**2
    assert parse_ratfun("-x^2") == -(x * x)
    assert parse_ratfun("(-x)^2") == x * x
    assert parse_ratfun("x^-2") == 1 / x**2
    assert parse_ratfun("1 - 2 - 3") == RatFun.constant(-4)
    assert parse_ratfun("12/3/2") == RatFun.constant(2)
    assert parse_ratfun("0.25*x") == x * Fraction(1, 4)
    assert parse_ratfun("--x") == x


@pytest.mark.parametrize(
    "text,column",
    [("1/(x", 4), ("x^x", 2), ("2 x", 2), ("3 $", 2), ("", 0), ("x+", 2), (")", 0), ("x^1.5", 2)],
)
def test_syntax_errors_report_column(text, column):
    with pytest.raises(ExprSyntaxError) as info:
        parse_ratfun(text)
    assert info.value.column == column
    assert info.value.expected


def test_division_by_zero():
    with pytest.raises(ZeroDenominator):
        parse_ratfun("1/(x-x)")
    with pytest.raises(ZeroDenominator):
        parse_ratfun("0^-1")


def test_tokens_have_columns():
    toks = tokenize(" x + 12")
    assert [(t.kind, t.column) for t in toks] == [("var", 1), ("op", 3), ("num", 5), ("end", 7)]


def test_parse_rational():
    assert parse_rational("3/4") == Fraction(3, 4)
    with pytest.raises(ExprSyntaxError):
        parse_rational("x")


@settings(max_examples=60, deadline=None)
@given(ratfuns())
def test_print_parse_fixed_point(r):
    assert parse_ratfun(format_ratfun(r)) == r


@settings(max_examples=30, deadline=None)
@given(ratfuns(2), ratfuns(2))
def test_parse_of_composite_text(a, b):
    text = f"({format_ratfun(a)}) * ({format_ratfun(b)}) - ({format_ratfun(b)})"
    assert parse_ratfun(text) == a * b - b
    assert isinstance(parse_ratfun(text).num, Poly)
