"""Reduced rational functions, pole data, partial fractions and Laurent roots."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from sympy import divisors

from .errors import NonRationalPoles, OddInfinityOrder, OddPoleOrder, ZeroDenominator
from .poly import Poly, poly_gcd, poly_lcm
from .surd import Scalar, SurdSum, scalar, sqrt_scalar


class RatFun:
    """``num/den`` with ``gcd(num, den) = 1`` and ``den`` monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _to_poly(num)
        den = Poly([1]) if den is None else _to_poly(den)
        if not den:
            raise ZeroDenominator("rational function with zero denominator")
        if not num:
            self.num, self.den = Poly(), Poly([1])
            return
        if den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        lc = den.leading
        if lc != 1:
            inv = 1 / lc
            num, den = num * inv, den * inv
        self.num, self.den = num, den

    @classmethod
    def x(cls) -> "RatFun":
        return cls(Poly.x())

    @classmethod
    def constant(cls, c) -> "RatFun":
        return cls(Poly([c]))

    # -- queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_rational(self) -> bool:
        return self.num.is_rational() and self.den.is_rational()

    def order_at_infinity(self) -> int | float:
        """``deg(den) - deg(num)``; ``inf`` for the zero function."""
        if not self.num:
            return math.inf
        return self.den.degree - self.num.degree

    def pole_order(self, c) -> int:
        """Multiplicity of ``c`` as a root of the denominator."""
        c = scalar(c)
        p, k = self.den, 0
        lin = Poly([-c, 1])
        while p.degree > 0 and not p(c):
            p = p.exact_div(lin)
            k += 1
        return k

    def valuation_at(self, c) -> int | float:
        """Order of vanishing at ``c`` (negative for poles)."""
        if not self.num:
            return math.inf
        c = scalar(c)
        lin = Poly([-c, 1])
        k, p = 0, self.num
        while not p(c):
            p = p.exact_div(lin)
            k += 1
        return k - self.pole_order(c)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _as_ratfun(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = RatFun.__new__(RatFun)
        out.num, out.den = -self.num, self.den
        return out

    def __sub__(self, other):
        other = _as_ratfun(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_ratfun(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_ratfun(other)
        if other is None:
            return NotImplemented
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfun(other)
        if other is None:
            return NotImplemented
        if not other:
            raise ZeroDenominator("division by the zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_ratfun(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if k >= 0:
            return RatFun(self.num**k, self.den**k)
        return RatFun(self.den ** (-k), self.num ** (-k))

    def __eq__(self, other):
        other = _as_ratfun(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def derivative(self) -> "RatFun":
        n, d = self.num, self.den
        return RatFun(n.derivative() * d - n * d.derivative(), d * d)

    def shift(self, h) -> "RatFun":
        """Return ``r(x - h)``: every pole ``c`` moves to ``c + h``."""
        h = scalar(h)
        return RatFun(self.num.taylor_shift(-h), self.den.taylor_shift(-h))

    def compose(self, inner: "RatFun") -> "RatFun":
        """Return ``r(inner(x))``."""
        n = max(self.num.degree, self.den.degree, 0)
        p, q = inner.num, inner.den

        def homog(poly: Poly) -> Poly:
            out = Poly()
            for k, c in enumerate(poly.coeffs):
                out = out + Poly([c]) * (p**k) * (q ** (n - k))
            return out

        return RatFun(homog(self.num), homog(self.den))

    def __call__(self, value) -> Scalar:
        den = self.den(value)
        if not den:
            raise ZeroDenominator(f"pole at {value}")
        return self.num(value) / den

    def evaluate_float(self, value):
        return self.num.evaluate_float(value) / self.den.evaluate_float(value)

    # -- series -----------------------------------------------------------
    def laurent_series(self, c, upto: int) -> dict[int, Scalar]:
        """Coefficients of ``(x - c)**k`` from the valuation up to ``upto``."""
        c = scalar(c)
        num = self.num.taylor_shift(c)
        den = self.den.taylor_shift(c)
        if not num:
            return {k: Fraction(0) for k in range(0, upto + 1)}
        j = _low_order(num)
        k = _low_order(den)
        w = Poly(num.coeffs[j:])
        u = Poly(den.coeffs[k:])
        val = j - k
        n_terms = max(upto - val + 1, 0)
        coeffs = series_divide(w, u, n_terms)
        return {val + i: coeffs[i] for i in range(n_terms)}

    def series_at_infinity(self, downto: int) -> dict[int, Scalar]:
        """Coefficients of ``x**k`` in the expansion at infinity, ``k >= downto``."""
        if not self.num:
            return {}
        dn, dd = self.num.degree, self.den.degree
        top = dn - dd
        w = self.num.reversed_coeffs()
        u = self.den.reversed_coeffs()
        n_terms = max(top - downto + 1, 0)
        coeffs = series_divide(w, u, n_terms)
        return {top - i: coeffs[i] for i in range(n_terms)}

    # -- printing ---------------------------------------------------------
    def to_string(self, var: str = "x") -> str:
        ns = self.num.to_string(var)
        if self.den.degree == 0:
            return ns
        if len(self.num.coeffs) - sum(1 for c in self.num.coeffs if not c) > 1:
            ns = f"({ns})"
        return f"{ns}/({self.den.to_string(var)})"

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"RatFun({self.to_string()!r})"


def _to_poly(value) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (list, tuple)):
        return Poly(value)
    return Poly([value])


def _as_ratfun(value) -> RatFun | None:
    if isinstance(value, RatFun):
        return value
    if isinstance(value, Poly):
        out = RatFun.__new__(RatFun)
        out.num, out.den = value, Poly([1])
        return out
    if isinstance(value, (int, Fraction, SurdSum)):
        out = RatFun.__new__(RatFun)
        out.num, out.den = Poly([value]), Poly([1])
        return out
    return None


def _low_order(p: Poly) -> int:
    return next(i for i, c in enumerate(p.coeffs) if c)


def series_divide(w: Poly, u: Poly, n: int) -> list[Scalar]:
    """First ``n`` power-series coefficients of ``w/u`` (``u(0) != 0``)."""
    u0 = u.coeff(0)
    inv = 1 / u0
    out: list[Scalar] = []
    for k in range(n):
        acc = w.coeff(k)
        for i in range(1, min(k, u.degree) + 1):
            ui = u.coeffs[i]
            if ui:
                acc = acc - ui * out[k - i]
        out.append(acc * inv)
    return out


def ratfun_reduce(num: Poly, den: Poly) -> RatFun:
    """Canonical coprime form with monic denominator."""
    return RatFun(num, den)


# -- pole data ---------------------------------------------------------------


@dataclass(frozen=True)
class PoleSpectrum:
    finite_poles: tuple[tuple[Fraction, int], ...]
    order_at_infinity: int | float

    @property
    def locations(self) -> tuple[Fraction, ...]:
        return tuple(c for c, _ in self.finite_poles)

    def as_dict(self) -> dict[Fraction, int]:
        return dict(self.finite_poles)


def rational_roots(p: Poly) -> list[tuple[Fraction, int]]:
    """Rational roots with multiplicity, ascending.

    Raises :class:`NonRationalPoles` if any factor of degree >= 1 is left
    after the rational roots are divided out, or if ``p`` has irrational
    coefficients.
    """
    if not p.is_rational():
        raise NonRationalPoles(f"denominator {p} has irrational coefficients")
    if p.degree <= 0:
        return []
    roots: dict[Fraction, int] = {}
    rest = p
    k = _low_order(rest)
    if k:
        roots[Fraction(0)] = k
        rest = Poly(rest.coeffs[k:])
    if rest.degree > 0:
        sqf = rest.exact_div(poly_gcd(rest, rest.derivative()))
        _, ints = sqf.content_integer()
        a0, an = abs(ints[0]), abs(ints[-1])
        candidates = sorted({Fraction(s * num, den) for num in divisors(a0) for den in divisors(an) for s in (1, -1)})
        for cand in candidates:
            lin = Poly([-cand, 1])
            mult = 0
            while rest.degree > 0 and not rest(cand):
                rest = rest.exact_div(lin)
                mult += 1
            if mult:
                roots[cand] = mult
            if rest.degree == 0:
                break
    if rest.degree > 0:
        raise NonRationalPoles(f"denominator factor {rest.monic()} has no rational roots")
    return sorted(roots.items())


def pole_spectrum(r: RatFun) -> PoleSpectrum:
    return PoleSpectrum(tuple(rational_roots(r.den)), r.order_at_infinity())


class PartialFractions(NamedTuple):
    polynomial_part: Poly
    terms: tuple[tuple[Fraction, int, Scalar], ...]

    def reconstruct(self) -> RatFun:
        total = RatFun(self.polynomial_part)
        for c, k, coeff in self.terms:
            total = total + RatFun(Poly([coeff]), Poly([-c, 1]) ** k)
        return total


def partial_fractions(r: RatFun) -> PartialFractions:
    """``r = polynomial_part + sum coeff/(x - pole)**k`` over rational poles."""
    poles = pole_spectrum(r)
    poly_part = r.num // r.den
    terms = []
    for c, order in poles.finite_poles:
        series = r.laurent_series(c, -1)
        for k in range(1, order + 1):
            coeff = series.get(-k, Fraction(0))
            if coeff:
                terms.append((c, k, coeff))
    return PartialFractions(poly_part, tuple(terms))


# -- Laurent square roots ------------------------------------------------------


class LaurentSqrt(NamedTuple):
    """Principal part of ``sqrt(r)`` plus the residual coefficient ``b``.

    At a finite pole ``principal`` is a polynomial in ``t = 1/(x - c)``; at
    infinity it is a polynomial in ``x``.
    """

    principal: Poly
    a: Scalar
    b_next: Scalar


def laurent_sqrt_at_pole(r: RatFun, c, v: int) -> LaurentSqrt:
    """Match ``(a t^v + ... + d t^2)^2 + b t^(v+1)`` against ``r`` at ``c``."""
    c = scalar(c)
    order = r.pole_order(c)
    if order % 2 and order >= 3:
        raise OddPoleOrder(f"pole of odd order {order} at {c}")
    if order != 2 * v or v < 2:
        raise ValueError(f"pole order {order} at {c} does not equal 2*v with v={v} >= 2")
    series = r.laurent_series(c, -(v + 1))
    coef = lambda e: series.get(e, Fraction(0))  # noqa: E731
    s = [Fraction(0)] * (v + 1)  # s[k] multiplies (x-c)^(-k)
    s[v] = sqrt_scalar(coef(-2 * v))
    inv = 1 / (2 * s[v])
    for j in range(1, v - 1):
        # exponent -2v + j in the square
        acc = coef(-2 * v + j)
        for i in range(1, j):
            acc = acc - s[v - i] * s[v - j + i]
        s[v - j] = acc * inv
    principal = Poly(s)
    square = principal * principal
    b = coef(-(v + 1)) - square.coeff(v + 1)
    return LaurentSqrt(principal, s[v], b)


def laurent_sqrt_at_infinity(r: RatFun, v: int) -> LaurentSqrt:
    """Match ``(a x^v + ... + d)^2 + b x^(v-1)`` against ``r`` at infinity."""
    order = r.order_at_infinity()
    if order <= 0 and order % 2:
        raise OddInfinityOrder(f"order {order} at infinity is odd")
    if order != -2 * v:
        raise ValueError(f"order {order} at infinity does not equal -2*v with v={v}")
    series = r.series_at_infinity(v - 1)
    coef = lambda e: series.get(e, Fraction(0))  # noqa: E731
    s = [Fraction(0)] * (v + 1)  # s[k] multiplies x^k
    s[v] = sqrt_scalar(coef(2 * v))
    inv = 1 / (2 * s[v])
    for j in range(1, v + 1):
        acc = coef(2 * v - j)
        for i in range(1, j):
            acc = acc - s[v - i] * s[v - j + i]
        s[v - j] = acc * inv
    principal = Poly(s)
    square = principal * principal
    b = coef(v - 1) - square.coeff(v - 1)
    return LaurentSqrt(principal, s[v], b)


def principal_part_at(principal: Poly, c) -> RatFun:
    """Turn a polynomial in ``1/(x - c)`` into a rational function of ``x``."""
    c = scalar(c)
    total = RatFun(Poly())
    for k, coeff in enumerate(principal.coeffs):
        if coeff:
            total = total + RatFun(Poly([coeff]), Poly([-c, 1]) ** k)
    return total


def common_denominator(funcs: list[RatFun]) -> Poly:
    den = Poly([1])
    for f in funcs:
        den = poly_lcm(den, f.den)
    return den
