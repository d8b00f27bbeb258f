"""Second-order linear ODEs with rational coefficients."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import NotHeunShape
from .poly import Poly
from .ratfun import RatFun, partial_fractions, pole_spectrum
from .surd import Scalar, scalar, sqrt_scalar


@dataclass(frozen=True)
class GeneralODE2:
    """``y'' + a*y' + b*y = 0``."""

    a: RatFun
    b: RatFun

    def shift(self, h) -> "GeneralODE2":
        return GeneralODE2(self.a.shift(h), self.b.shift(h))


@dataclass(frozen=True)
class NormalODE2:
    """``xi'' = r*xi``."""

    r: RatFun

    def shift(self, h) -> "NormalODE2":
        return NormalODE2(self.r.shift(h))


ODE = Union[GeneralODE2, NormalODE2]


@dataclass(frozen=True)
class Gauge:
    """Multiplier ``exp(1/2 * integral(a))`` with ``xi = multiplier * y``.

    Only ``a`` is kept; the multiplier is usually not rational.
    """

    a: RatFun

    def multiplier_series(self, x0, order: int) -> list[Scalar]:
        """Taylor coefficients of ``exp(1/2 * int_{x0}^x a)`` about ``x0``."""
        half_a = taylor_coefficients(self.a, x0, order)
        half_a = [c / 2 for c in half_a]
        # E' = (a/2) E, E(x0) = 1
        e: list[Scalar] = [Fraction(1)]
        for k in range(order):
            acc = sum((half_a[i] * e[k - i] for i in range(k + 1)), Fraction(0))
            e.append(acc / (k + 1))
        return e


def to_normal_form(ode: GeneralODE2) -> tuple[NormalODE2, Gauge]:
    """Remove the first-derivative term: ``r = a^2/4 + a'/2 - b``."""
    a = ode.a
    r = a * a * Fraction(1, 4) + a.derivative() * Fraction(1, 2) - ode.b
    return NormalODE2(r), Gauge(a)


def shift(ode: ODE, h) -> ODE:
    """Compose coefficients with ``x -> x - h`` (singular points move by ``+h``)."""
    return ode.shift(h)


class SingularKind(enum.Enum):
    ORDINARY = "ordinary"
    REGULAR = "regular"
    IRREGULAR = "irregular"


INFINITY = "inf"


@dataclass(frozen=True)
class SingularityReport:
    points: tuple[tuple[Union[Fraction, str], SingularKind], ...]

    def as_dict(self) -> dict:
        return dict(self.points)

    def finite(self) -> dict[Fraction, SingularKind]:
        return {p: k for p, k in self.points if p != INFINITY}

    def at_infinity(self) -> SingularKind:
        return dict(self.points)[INFINITY]


def classify_singularities(ode: GeneralODE2) -> SingularityReport:
    """Fuchs criteria at every finite pole of ``a`` or ``b`` and at infinity."""
    a, b = ode.a, ode.b
    poles = sorted(set(pole_spectrum(a).locations) | set(pole_spectrum(b).locations))
    points: list = []
    for c in poles:
        regular = a.pole_order(c) <= 1 and b.pole_order(c) <= 2
        points.append((c, SingularKind.REGULAR if regular else SingularKind.IRREGULAR))
    # at infinity via x = 1/t: ordinary iff a = 2/x + O(x^-2), b = O(x^-4);
    # regular iff a = O(1/x), b = O(x^-2)
    two_over_x = RatFun(Poly([2]), Poly.x())
    if (a - two_over_x).order_at_infinity() >= 2 and b.order_at_infinity() >= 4:
        kind = SingularKind.ORDINARY
    elif a.order_at_infinity() >= 1 and b.order_at_infinity() >= 2:
        kind = SingularKind.REGULAR
    else:
        kind = SingularKind.IRREGULAR
    points.append((INFINITY, kind))
    return SingularityReport(tuple(points))


@dataclass(frozen=True)
class HeunParams:
    a: Scalar
    gamma: Scalar
    delta: Scalar
    epsilon: Scalar
    mu: Scalar
    beta: Scalar
    q: Scalar

    def fuchs_defect(self) -> Scalar:
        """``epsilon + gamma + delta - mu - beta - 1``; zero for a valid Heun ODE."""
        return self.epsilon + self.gamma + self.delta - self.mu - self.beta - 1


def heun_parameters(ode: GeneralODE2) -> HeunParams:
    """Read off Heun data from ``y'' + (g/x + d/(x-1) + e/(x-a)) y' + (mu*beta*x - q)/(x(x-1)(x-a)) y``.

    The singular set must be ``{0, 1, a}`` with all points (and infinity)
    regular; callers are responsible for moving the singularities there.
    """
    report = classify_singularities(ode)
    finite = report.finite()
    if any(k is not SingularKind.REGULAR for k in finite.values()) or report.at_infinity() is SingularKind.IRREGULAR:
        raise NotHeunShape("Heun equations have only regular singular points")
    others = sorted(set(finite) - {Fraction(0), Fraction(1)})
    if not {Fraction(0), Fraction(1)} <= set(finite) or len(others) != 1:
        raise NotHeunShape(f"singular set {sorted(finite)} is not {{0, 1, a}}")
    sing = others[0]
    pf = partial_fractions(ode.a)
    if pf.polynomial_part or any(k != 1 for _, k, _ in pf.terms):
        raise NotHeunShape("first-derivative coefficient is not a sum of simple poles")
    residues = {c: coeff for c, _, coeff in pf.terms}
    if set(residues) - {Fraction(0), Fraction(1), sing}:
        raise NotHeunShape("first-derivative coefficient has poles off {0, 1, a}")
    gamma = residues.get(Fraction(0), Fraction(0))
    delta = residues.get(Fraction(1), Fraction(0))
    eps = residues.get(sing, Fraction(0))
    cubic = Poly.from_roots([0, 1, sing])
    lin = ode.b * RatFun(cubic)
    if not lin.is_polynomial() or lin.num.degree > 1:
        raise NotHeunShape("zeroth-order coefficient is not (mu*beta*x - q)/(x(x-1)(x-a))")
    mu_beta = lin.num.coeff(1)
    q = -lin.num.coeff(0)
    # mu, beta are the roots of t^2 - (gamma + delta + eps - 1) t + mu*beta
    s = gamma + delta + eps - 1
    disc = s * s - 4 * mu_beta
    root = sqrt_scalar(disc)
    mu, beta = (s + root) / 2, (s - root) / 2
    params = HeunParams(scalar(sing), gamma, delta, eps, mu, beta, q)
    assert not params.fuchs_defect()
    return params


def taylor_coefficients(f: RatFun, x0, order: int) -> list[Scalar]:
    """Taylor coefficients of ``f`` about an ordinary point ``x0``, degrees 0..order."""
    series = f.laurent_series(x0, order)
    if any(k < 0 and v for k, v in series.items()):
        raise ValueError(f"{x0} is a pole")
    return [series.get(k, Fraction(0)) for k in range(order + 1)]


def series_solution(ode: ODE, x0, y0, dy0, order: int) -> list[Scalar]:
    """Formal power-series solution about an ordinary point, exact."""
    if isinstance(ode, NormalODE2):
        a_c = [Fraction(0)] * (order + 1)
        b_c = [-c for c in taylor_coefficients(ode.r, x0, order)]
    else:
        a_c = taylor_coefficients(ode.a, x0, order)
        b_c = taylor_coefficients(ode.b, x0, order)
    y: list[Scalar] = [scalar(y0), scalar(dy0)]
    for k in range(order - 1):
        # (k+2)(k+1) y_{k+2} = -sum a_i (k-i+1) y_{k-i+1} - sum b_i y_{k-i}
        acc = Fraction(0)
        for i in range(k + 1):
            acc = acc + a_c[i] * (k - i + 1) * y[k - i + 1] + b_c[i] * y[k - i]
        y.append(-acc / ((k + 2) * (k + 1)))
    return y[: order + 1]
