import math
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from liouvillian.errors import NonRationalPoles, OddInfinityOrder, OddPoleOrder, ZeroDenominator
from liouvillian.poly import Poly
from liouvillian.ratfun import (
    RatFun,
    laurent_sqrt_at_infinity,
    laurent_sqrt_at_pole,
    partial_fractions,
    pole_spectrum,
    principal_part_at,
    rational_roots,
)

from conftest import X, from_sympy, ratfuns, small_fractions, to_sympy

x = RatFun.x()
R_HEUN = RatFun(Poly([3, 11, -13, 3]), Poly.from_roots([0, 0, 1, 2, 2]) * 4)


def test_canonical_form():
    r = RatFun(Poly([2, 2]), Poly([0, 4, 4]))
    assert r.den.leading == 1
    assert r == RatFun(Poly([Fraction(1, 2)]), Poly([0, 1]))
    with pytest.raises(ZeroDenominator):
        RatFun(Poly([1]), Poly())


def test_pole_spectrum():
    poles = pole_spectrum(R_HEUN)
    assert poles.as_dict() == {0: 2, 1: 1, 2: 2}
    assert poles.order_at_infinity == 2
    with pytest.raises(NonRationalPoles):
        pole_spectrum(1 / (x * x + 1))


def test_partial_fractions_heun_r():
    pf = partial_fractions(R_HEUN)
    terms = {(c, k): v for c, k, v in pf.terms}
    assert terms == {
        (0, 1): Fraction(-17, 16),
        (0, 2): Fraction(-3, 16),
        (1, 1): Fraction(1),
        (2, 1): Fraction(1, 16),
        (2, 2): Fraction(-3, 16),
    }
    assert pf.reconstruct() == R_HEUN


@st.composite
def split_ratfuns(draw):
    roots = draw(st.lists(st.integers(-3, 3).map(Fraction), min_size=1, max_size=4))
    num = draw(st.lists(small_fractions(), min_size=1, max_size=len(roots) + 2))
    return RatFun(Poly(num), Poly.from_roots(roots))


@settings(max_examples=40, deadline=None)
@given(split_ratfuns())
def test_partial_fractions_against_apart(r):
    pf = partial_fractions(r)
    assert pf.reconstruct() == r
    ours = to_sympy(RatFun(pf.polynomial_part)) + sum(
        (sp.Rational(v.numerator, v.denominator) / (X - sp.Rational(c.numerator, c.denominator)) ** k for c, k, v in pf.terms),
        sp.Integer(0),
    )
    assert sp.simplify(ours - sp.apart(to_sympy(r), X)) == 0


@settings(max_examples=40, deadline=None)
@given(ratfuns(), ratfuns())
def test_field_operations_match_sympy(a, b):
    assert sp.simplify(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0
    assert sp.simplify(to_sympy(a + b) - (to_sympy(a) + to_sympy(b))) == 0
    assert sp.simplify(to_sympy(a.derivative()) - sp.diff(to_sympy(a), X)) == 0


@settings(max_examples=30, deadline=None)
@given(split_ratfuns(), st.integers(-3, 3))
def test_laurent_series_against_sympy(r, c):
    series = r.laurent_series(c, 3)
    oracle = sp.series(to_sympy(r), X, c, 4).removeO()
    ours = sum((sp.Rational(v.numerator, v.denominator) * (X - c) ** k for k, v in series.items()), sp.Integer(0))
    assert sp.expand(ours - oracle) == 0


@settings(max_examples=30, deadline=None)
@given(split_ratfuns(), small_fractions())
def test_shift_moves_poles(r, h):
    poles = pole_spectrum(r).as_dict()
    shifted = pole_spectrum(r.shift(h)).as_dict()
    assert shifted == {c + h: k for c, k in poles.items()}


def test_rational_roots_multiplicity():
    assert rational_roots(Poly.from_roots([Fraction(1, 2), Fraction(1, 2), -3])) == [(-3, 1), (Fraction(1, 2), 2)]


def test_laurent_sqrt_at_pole():
    # truncated root keeps exponents -v..-2 only
    res = laurent_sqrt_at_pole(1 / x**4 + 2 / x**3 + 5 / x**2, 0, 2)
    assert principal_part_at(res.principal, 0) == 1 / x**2
    assert (res.a, res.b_next) == (1, 2)
    res = laurent_sqrt_at_pole(1 / x**6 + 2 / x**5 + 4 / x**4 + 1 / x, 0, 3)
    assert principal_part_at(res.principal, 0) == 1 / x**3 + 1 / x**2
    assert (res.a, res.b_next) == (1, 3)
    with pytest.raises(OddPoleOrder):
        laurent_sqrt_at_pole(1 / x**3, 0, 2)


def test_laurent_sqrt_at_infinity():
    res = laurent_sqrt_at_infinity(x * x + 1, 1)
    assert res.principal == Poly([0, 1])
    assert res.b_next == 1
    # alpha_inf = (+-b/a - v)/2 gives {0, -1}: exp(x^2/2) is a solution
    alphas = {(s * res.b_next / res.a - 1) / 2 for s in (1, -1)}
    assert alphas == {0, -1}
    with pytest.raises(OddInfinityOrder):
        laurent_sqrt_at_infinity(x**3, 1)


def test_series_at_infinity():
    s = (1 / (x - 1)).series_at_infinity(-4)
    assert all(s.get(-k) == 1 for k in range(1, 5))


def test_from_sympy_roundtrip():
    assert from_sympy(to_sympy(R_HEUN)) == R_HEUN
    assert math.isclose(R_HEUN.evaluate_float(3.0), float(to_sympy(R_HEUN).subs(X, 3)))
