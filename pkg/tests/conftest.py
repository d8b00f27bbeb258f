from fractions import Fraction

import sympy as sp
from hypothesis import strategies as st

from liouvillian.poly import Poly
from liouvillian.ratfun import RatFun

X = sp.Symbol("x")


def small_fractions(max_num: int = 9, max_den: int = 6):
    return st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))


def nonzero_fractions(max_num: int = 9, max_den: int = 6):
    return small_fractions(max_num, max_den).filter(bool)


def polys(max_degree: int = 4):
    return st.lists(small_fractions(), min_size=0, max_size=max_degree + 1).map(Poly)


def nonzero_polys(max_degree: int = 4):
    return polys(max_degree).filter(bool)


def ratfuns(max_degree: int = 3):
    return st.builds(RatFun, polys(max_degree), nonzero_polys(max_degree))


def to_sympy(obj) -> sp.Expr:
    """Oracle conversion of exact objects to sympy expressions."""
    if isinstance(obj, RatFun):
        return to_sympy(obj.num) / to_sympy(obj.den)
    if isinstance(obj, Poly):
        return sum((sp.Rational(c.numerator, c.denominator) * X**k for k, c in enumerate(obj.coeffs)), sp.Integer(0))
    raise TypeError(obj)


def from_sympy(expr) -> RatFun:
    num, den = sp.fraction(sp.together(sp.sympify(expr)))
    def conv(e):
        p = sp.Poly(sp.expand(e), X)
        cs = p.all_coeffs()[::-1]
        return Poly([Fraction(int(sp.numer(c)), int(sp.denom(c))) for c in cs])
    return RatFun(conv(num), conv(den))
