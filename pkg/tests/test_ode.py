from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings

from liouvillian.errors import NotHeunShape
from liouvillian.ode import (
    INFINITY,
    GeneralODE2,
    NormalODE2,
    SingularKind,
    classify_singularities,
    heun_parameters,
    series_solution,
    to_normal_form,
)
from liouvillian.poly import Poly
from liouvillian.ratfun import RatFun

from conftest import X, ratfuns, to_sympy

x = RatFun.x()
one = RatFun.constant(1)


def test_normal_form_legendre_like():
    ode = GeneralODE2(-2 * x / (1 - x * x), RatFun.constant(2) / (1 - x * x))
    normal, gauge = to_normal_form(ode)
    assert normal.r == ode.a * ode.a / 4 + ode.a.derivative() / 2 - ode.b
    assert gauge.a == ode.a


@settings(max_examples=25, deadline=None)
@given(ratfuns(2), ratfuns(2))
def test_normal_form_conjugation_symbolic(a, b):
    """xi = exp(int a/2) y turns y'' + a y' + b y = 0 into xi'' = r xi."""
    normal, _ = to_normal_form(GeneralODE2(a, b))
    A, B, R = to_sympy(a), to_sympy(b), to_sympy(normal.r)
    y0, y1 = sp.symbols("y0 y1")
    y2 = -A * y1 - B * y0
    # with E' = (A/2) E: xi'/E = A/2 y + y', xi''/E = A/2 (A/2 y + y') + A'/2 y + A/2 y' + y''
    xi2 = A / 2 * (A / 2 * y0 + y1) + sp.diff(A, X) / 2 * y0 + A / 2 * y1 + y2
    assert sp.cancel(sp.together(xi2 - R * y0)) == 0


def test_classify_legendre():
    ode = GeneralODE2(-2 * x / (1 - x * x), RatFun.constant(6) / (1 - x * x))
    rep = classify_singularities(ode).as_dict()
    assert rep == {Fraction(-1): SingularKind.REGULAR, Fraction(1): SingularKind.REGULAR, INFINITY: SingularKind.REGULAR}


def test_classify_airy_and_ordinary_infinity():
    assert classify_singularities(GeneralODE2(RatFun.constant(0), -x)).at_infinity() is SingularKind.IRREGULAR
    # y'' + (2/x) y' = 0 has an ordinary point at infinity
    assert classify_singularities(GeneralODE2(2 / x, RatFun.constant(0))).at_infinity() is SingularKind.ORDINARY
    assert classify_singularities(GeneralODE2(1 / x**2, RatFun.constant(0))).finite() == {0: SingularKind.IRREGULAR}


def heun_ode(a, g, d, e, mu, beta, q):
    A = g / x + d / (x - 1) + e / (x - a)
    B = (mu * beta * x - q) / (x * (x - 1) * (x - a))
    return GeneralODE2(A, B)


def test_heun_parameters_roundtrip():
    a, g, d, e = Fraction(3), Fraction(1, 3), Fraction(2), Fraction(1, 2)
    mu, beta = Fraction(5, 2), g + d + e - 1 - Fraction(5, 2)
    p = heun_parameters(heun_ode(a, g, d, e, mu, beta, Fraction(7)))
    assert (p.a, p.gamma, p.delta, p.epsilon, p.q) == (a, g, d, e, 7)
    assert {p.mu, p.beta} == {mu, beta}
    assert p.fuchs_defect() == 0


def test_heun_rejects_other_shapes():
    with pytest.raises(NotHeunShape):
        heun_parameters(GeneralODE2(RatFun.constant(0), -x))
    with pytest.raises(NotHeunShape):
        heun_parameters(GeneralODE2(1 / x + 1 / (x - 1), 1 / (x * (x - 1))))


def test_series_solution_exp():
    coeffs = series_solution(NormalODE2(one), 0, 1, 1, 8)
    fact = 1
    for k, c in enumerate(coeffs):
        assert c == Fraction(1, fact)
        fact *= k + 1


def test_series_solution_matches_sympy_for_general_ode():
    ode = GeneralODE2(1 / (x - 2), x / (x - 3))
    coeffs = series_solution(ode, 0, 1, 0, 6)
    y = sum(sp.Rational(c.numerator, c.denominator) * X**k for k, c in enumerate(coeffs))
    residual = sp.diff(y, X, 2) + to_sympy(ode.a) * sp.diff(y, X) + to_sympy(ode.b) * y
    # residual vanishes up to the truncation order
    assert sp.series(residual, X, 0, 5).removeO() == 0


def test_shift_moves_singularities():
    ode = GeneralODE2(1 / x, 1 / (x * (x - 1)))
    shifted = ode.shift(Fraction(2))
    assert set(classify_singularities(shifted).finite()) == {2, 3}
    assert Poly.from_roots([2, 3]) == shifted.b.den
