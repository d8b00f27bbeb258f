import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liouvillian.surd import (
    SurdSum,
    as_rational,
    format_scalar,
    is_integer,
    is_rational,
    scalar,
    sqrt_rational,
    squarefree_decomposition,
    surd,
)

from conftest import nonzero_fractions, small_fractions

RADICANDS = [1, 2, 3, 5, 6, -1, -2, -3]


def surds():
    return st.dictionaries(st.sampled_from(RADICANDS), small_fractions(), max_size=3).map(surd)


def nonzero_surds():
    return surds().filter(bool)


def test_squarefree_decomposition():
    assert squarefree_decomposition(12) == (2, 3)
    assert squarefree_decomposition(-8) == (2, -2)
    assert squarefree_decomposition(1) == (1, 1)


def test_sqrt_rational_exact():
    assert sqrt_rational(Fraction(9, 4)) == Fraction(3, 2)
    r = sqrt_rational(Fraction(1, 2))
    assert isinstance(r, SurdSum)
    assert r * r == Fraction(1, 2)
    assert sqrt_rational(-1) * sqrt_rational(-1) == -1


def test_imaginary_products_follow_principal_branch():
    i = sqrt_rational(-1)
    assert sqrt_rational(-2) * sqrt_rational(-3) == -sqrt_rational(6)
    assert complex(i) == 1j


def test_collapse_to_fraction():
    s = surd({1: 1, 5: 1})
    t = surd({1: 1, 5: -1})
    assert s * t == Fraction(-4)
    assert isinstance(s * t, Fraction)
    assert hash(surd({1: Fraction(1, 2)})) == hash(Fraction(1, 2))


def test_format_scalar():
    assert format_scalar(surd({1: Fraction(1, 2), 5: Fraction(-1, 2)})) == "1/2 - 1/2*sqrt(5)"
    assert format_scalar(Fraction(3, 4)) == "3/4"


def test_scalar_coercion():
    assert scalar("3/4") == Fraction(3, 4)
    assert is_integer(scalar(7)) and not is_integer(Fraction(1, 2))
    with pytest.raises(TypeError):
        scalar(0.5)
    with pytest.raises(ValueError):
        as_rational(sqrt_rational(2))


@settings(max_examples=80, deadline=None)
@given(surds(), surds(), surds())
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a + b) - b == a


@settings(max_examples=80, deadline=None)
@given(nonzero_surds())
def test_inverse(a):
    assert a * (1 / a) == 1


@settings(max_examples=80, deadline=None)
@given(surds(), nonzero_surds())
def test_complex_embedding_matches(a, b):
    assert cmath.isclose(complex(a / b), complex(a) / complex(b), rel_tol=1e-9, abs_tol=1e-9)


@given(nonzero_fractions())
def test_sqrt_squares_back(q):
    r = sqrt_rational(q)
    assert r * r == q
    assert is_rational(r) == (math.isqrt(abs(q.numerator)) ** 2 == abs(q.numerator)
                              and math.isqrt(q.denominator) ** 2 == q.denominator and q > 0)
