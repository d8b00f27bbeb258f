import cmath
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liouvillian.errors import DegenerateEquation, NonRationalPoles
from liouvillian.kovacic import (
    case2_conditions,
    case3_conditions,
    kovacic,
    riccati_residual,
    second_solution_factor,
)
from liouvillian.poly import Poly
from liouvillian.ratfun import RatFun

x = RatFun.x()


def riemann_normal(lam, mu, nu) -> RatFun:
    """Normal form of the Riemann equation with exponent differences lam, mu, nu at 0, 1, inf."""
    lam, mu, nu = Fraction(lam), Fraction(mu), Fraction(nu)
    return -((1 - lam**2) / (4 * x * x) + (1 - mu**2) / (4 * (x - 1) ** 2) - (1 - lam**2 - mu**2 + nu**2) / (4 * x * (x - 1)))


def random_omega(rng: random.Random) -> RatFun:
    poles = rng.sample(range(-2, 3), rng.randint(0, 3))
    den = Poly([1])
    for c in poles:
        den = den * Poly.from_roots([c] * rng.randint(1, 2))
    num = Poly([Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(rng.randint(1, 4))])
    if not num:
        num = Poly([1])
    return RatFun(num, den)


def _mp(q: Fraction) -> mpmath.mpf:
    return mpmath.mpf(q.numerator) / q.denominator


def omega_roots_satisfy_riccati(coeffs: list[RatFun], r: RatFun, x0: Fraction) -> float:
    """Largest ``|omega' + omega^2 - r|`` over the roots of ``sum coeffs[i] omega^i`` at ``x0``.

    Coefficients are evaluated exactly; roots are found at 60 digits since
    the degree-12 relations are badly conditioned in double precision.
    ``omega'`` comes from implicit differentiation of the relation.
    """
    with mpmath.workdps(60):
        vals = [_mp(c(x0)) for c in coeffs]
        ders = [_mp(c.derivative()(x0)) for c in coeffs]
        rv = _mp(r(x0))
        worst = mpmath.mpf(0)
        for w in mpmath.polyroots(vals[::-1], maxsteps=500, extraprec=500):
            F_w = sum(i * vals[i] * w ** (i - 1) for i in range(1, len(vals)))
            F_x = sum(ders[i] * w**i for i in range(len(vals)))
            worst = max(worst, abs(-F_x / F_w + w * w - rv))
        return float(worst)


# -- known equations -----------------------------------------------------------


def test_exponential_solution():
    v = kovacic(RatFun.constant(1))
    assert v.tag == "Case1" and v.group_label == "Borel-reducible"
    assert v.data.log_derivative() in (RatFun.constant(1), RatFun.constant(-1))


def test_power_solution():
    v = kovacic(2 / x**2)
    assert v.tag == "Case1"
    assert v.data.omega == 2 / x and v.data.P == Poly([1])
    assert riccati_residual(v.data.log_derivative(), 2 / x**2).is_zero()


def test_airy_is_case4():
    v = kovacic(x)
    assert v.tag == "Case4" and v.group_label == "SL2" and not v.liouvillian


def test_gaussian_case1():
    v = kovacic(x * x + 1)
    assert v.tag == "Case1"
    assert v.data.log_derivative() == x


def test_surd_omega_for_constant_r():
    v = kovacic(RatFun.constant(2))
    assert v.tag == "Case1"
    w = v.data.log_derivative()
    assert riccati_residual(w, RatFun.constant(2)).is_zero()


def test_imaginary_surd_for_negative_constant():
    v = kovacic(RatFun.constant(-1))
    assert v.tag == "Case1"
    assert riccati_residual(v.data.log_derivative(), RatFun.constant(-1)).is_zero()


def test_errors():
    with pytest.raises(DegenerateEquation):
        kovacic(RatFun.constant(0))
    with pytest.raises(NonRationalPoles):
        kovacic(1 / (x * x + 1))


# -- Riemann equations: Kimura's classification as oracle ----------------------------

KIMURA = [
    (("1/2", "1/3", "7/6"), "Case1", "Borel-reducible"),
    (("1/2", "1/2", "1/3"), "Case2", "infinite-dihedral"),
    (("1/2", "1/3", "1/3"), "Case3", "finite-primitive(4)"),
    (("1/2", "1/3", "1/4"), "Case3", "finite-primitive(6)"),
    (("1/2", "1/3", "1/5"), "Case3", "finite-primitive(12)"),
    (("1/2", "2/5", "1/3"), "Case3", "finite-primitive(12)"),
    (("1/3", "1/4", "1/5"), "Case4", "SL2"),
    (("1/3", "1/3", "1/4"), "Case4", "SL2"),
]


@pytest.mark.parametrize("params,tag,label", KIMURA)
def test_riemann_classification(params, tag, label):
    v = kovacic(riemann_normal(*params))
    assert (v.tag, v.group_label) == (tag, label)


def test_case2_quadratic_roots_solve_riccati():
    r = 1 / x - Fraction(3, 16) / x**2
    v = kovacic(r)
    assert v.tag == "Case2"
    assert v.data.theta == 1 / (2 * x) and v.data.P == Poly([1])
    c2, c1, c0 = v.data.quadratic
    for x0 in (Fraction(7, 10), Fraction(19, 10), Fraction(33, 10)):
        assert omega_roots_satisfy_riccati([c0, c1, c2], r, x0) < 1e-40


def test_case2_dihedral_riemann_roots():
    r = riemann_normal("1/2", "1/2", "1/3")
    v = kovacic(r)
    c2, c1, c0 = v.data.quadratic
    assert omega_roots_satisfy_riccati([c0, c1, c2], r, Fraction(2, 5)) < 1e-40


@pytest.mark.parametrize("params,m", [(("1/2", "1/3", "1/3"), 4), (("1/2", "1/3", "1/4"), 6), (("1/2", "1/3", "1/5"), 12)])
def test_case3_omega_polynomial_roots_solve_riccati(params, m):
    r = riemann_normal(*params)
    v = kovacic(r)
    assert v.data.m == m
    assert v.data.sequence[-1].is_zero()
    coeffs = [RatFun(c) for c in v.data.omega_polynomial]
    for x0 in (Fraction(3, 10), Fraction(11, 20)):
        assert omega_roots_satisfy_riccati(coeffs, r, x0) < 1e-40


def test_case2_and_case3_condition_sets():
    r = riemann_normal("1/2", "1/3", "1/3")
    conds = {c.point: c.E for c in case2_conditions(r)}
    assert conds[0] == (1, 2, 3)
    c3, failure = case3_conditions(r, 4)
    assert failure is None
    assert c3[0].E == (3, 6, 9)


# -- properties -------------------------------------------------------------------------


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_riccati_round_trip(seed):
    omega = random_omega(random.Random(seed))
    r = omega.derivative() + omega * omega
    if r.is_zero():
        return
    v = kovacic(r)
    assert v.tag == "Case1"
    assert riccati_residual(v.data.log_derivative(), r).is_zero()


@settings(max_examples=10, deadline=None)
@given(st.sampled_from([k[0] for k in KIMURA]), st.integers(-3, 3), st.integers(1, 3))
def test_shift_invariance(params, p, q):
    r = riemann_normal(*params)
    h = Fraction(p, q)
    a, b = kovacic(r), kovacic(r.shift(h))
    assert (a.tag, a.group_label) == (b.tag, b.group_label)


def test_trace_records_every_case():
    v = kovacic(riemann_normal("1/3", "1/4", "1/5"))
    t = v.trace
    assert t.case1 is not None and t.case2 is not None
    assert sorted(t.case3) == [4, 6, 12]


def test_second_solution_wronskian():
    """zeta1 = x^2 for r = 2/x^2; the reduction-of-order solution is -1/(3x)."""
    sol = second_solution_factor(kovacic(2 / x**2).data)
    z1 = sol.first(2.0, 1.0)
    assert cmath.isclose(z1, 4.0)
    z2 = sol.evaluate(2.0, 1.0)
    # zeta1(x) * int_1^x t^-4 dt = x^2 (1 - x^-3)/3
    assert cmath.isclose(z2, 4.0 * (1 - 1 / 8) / 3, rel_tol=1e-9)
