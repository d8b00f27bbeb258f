"""Kovacic's algorithm for ``xi'' = r xi`` with ``r`` in Q(x) (rational poles).

The three Liouvillian cases are tried in order (case 3 with m = 4, 6, 12);
every candidate that is examined is recorded in the returned trace so a run
can be replayed and audited.

Conventions that differ from some printed statements of the algorithm:

* Case 2: ``omega`` is a root of ``omega^2 - phi*omega + (phi'/2 + phi^2/2 - r)``.
* Case 3: ``P_{i-1} = -S P_i' + ((m-i) S' - S theta) P_i - (m-i)(i+1) S^2 r P_{i+1}``
  started from ``P_m = P``.  The overall sign of the sequence is irrelevant
  (the recursion is linear), and with this start ``P_{m-1} = -S theta`` for
  ``P = 1``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence, Union

from scipy.integrate import quad

from .errors import DegenerateEquation
from .ode import NormalODE2
from .poly import Poly, solve_linear
from .ratfun import (
    RatFun,
    common_denominator,
    laurent_sqrt_at_infinity,
    laurent_sqrt_at_pole,
    pole_spectrum,
    principal_part_at,
)
from .surd import Scalar, as_rational, is_integer, sqrt_rational

INF = "inf"
Point = Union[Fraction, str]

GROUP_LABELS = {1: "Borel-reducible", 2: "infinite-dihedral", 4: "SL2"}
FINITE_GROUP_NAMES = {4: "tetrahedral", 6: "octahedral", 12: "icosahedral"}


# ---------------------------------------------------------------------------
# shared helpers


def _coefficient_minus_two(r: RatFun, point: Point) -> Scalar:
    """``b`` in ``r = ... + b (x-c)^-2 + ...`` (finite) or ``r = ... + b x^-2`` (infinity)."""
    if point == INF:
        return r.series_at_infinity(-2).get(-2, Fraction(0))
    return r.laurent_series(point, -2).get(-2, Fraction(0))


def _admissible(choices: Sequence[Sequence[Scalar]], accept: Callable[[Scalar], bool]) -> Iterator[tuple[int, ...]]:
    """Index tuples (lexicographic) whose chosen values sum to an accepted total.

    Suffix-sum sets prune branches that cannot be completed.
    """
    k = len(choices)
    suffix: list[set] = [set() for _ in range(k + 1)]
    suffix[k] = {Fraction(0)}
    for i in range(k - 1, -1, -1):
        suffix[i] = {v + t for v in choices[i] for t in suffix[i + 1]}

    def rec(i: int, partial: Scalar, picked: tuple[int, ...]):
        if i == k:
            if accept(partial):
                yield picked
            return
        for j, v in enumerate(choices[i]):
            s = partial + v
            if any(accept(s + t) for t in suffix[i + 1]):
                yield from rec(i + 1, s, picked + (j,))

    yield from rec(0, Fraction(0), ())


def _nonneg_integer(value: Scalar) -> bool:
    return is_integer(value) and as_rational(value) >= 0


def _monic_kernel(apply: Callable[[Poly], RatFun], n: int) -> Poly | None:
    """Monic ``P`` of degree ``n`` with ``apply(P) == 0`` (``apply`` linear)."""
    images = [apply(Poly.monomial(k)) for k in range(n + 1)]
    den = common_denominator(images)
    polys = [(img * RatFun(den)).num for img in images]
    if n == 0:
        return Poly([1]) if not polys[0] else None
    height = max((p.degree for p in polys), default=-1) + 1
    if height <= 0:
        return Poly.monomial(n)
    rows = [[polys[k].coeff(d) for k in range(n)] for d in range(height)]
    rhs = [-polys[n].coeff(d) for d in range(height)]
    sol = solve_linear(rows, rhs)
    if sol is None:
        return None
    return Poly(list(sol) + [1])


def riccati_residual(v: RatFun, r: RatFun) -> RatFun:
    """``v' + v^2 - r``; zero iff ``exp(int v)`` solves ``xi'' = r xi``."""
    return v.derivative() + v * v - r


# ---------------------------------------------------------------------------
# trace / result records


@dataclass(frozen=True)
class PointCondition:
    """Case-1 situation at one point of Gamma."""

    point: Point
    tag: str
    order: int | float
    sqrt_r: RatFun
    alpha_plus: Scalar
    alpha_minus: Scalar

    def alpha(self, sign: str) -> Scalar:
        return self.alpha_plus if sign == "+" else self.alpha_minus


@dataclass(frozen=True)
class Case1Attempt:
    n: int
    signs: tuple[str, ...]
    omega: RatFun
    P: Poly | None


@dataclass
class Case1Trace:
    conditions: list[PointCondition] = field(default_factory=list)
    failure: str | None = None
    D: list[int] = field(default_factory=list)
    attempts: list[Case1Attempt] = field(default_factory=list)


@dataclass(frozen=True)
class Case1Data:
    omega: RatFun
    P: Poly
    n: int
    signs: tuple[str, ...]

    def log_derivative(self) -> RatFun:
        """``v = omega + P'/P``, the logarithmic derivative of the solution."""
        return self.omega + RatFun(self.P.derivative(), self.P)


@dataclass(frozen=True)
class ECondition:
    point: Point
    tag: str
    order: int | float
    E: tuple[int, ...]


@dataclass(frozen=True)
class Case2Attempt:
    n: int
    e: tuple[int, ...]
    theta: RatFun
    P: Poly | None


@dataclass
class Case2Trace:
    conditions: list[ECondition] = field(default_factory=list)
    failure: str | None = None
    D: list[int] = field(default_factory=list)
    attempts: list[Case2Attempt] = field(default_factory=list)


@dataclass(frozen=True)
class Case2Data:
    theta: RatFun
    P: Poly
    n: int
    e: tuple[int, ...]
    phi: RatFun
    quadratic: tuple[RatFun, RatFun, RatFun]
    """Coefficients ``(c2, c1, c0)`` of ``c2*omega^2 + c1*omega + c0 = 0``."""


@dataclass(frozen=True)
class Case3Attempt:
    n: int
    e: tuple[int, ...]
    theta: RatFun
    S: Poly
    top_step: Poly
    P: Poly | None
    P_minus_one: Poly | None


@dataclass
class Case3Trace:
    m: int
    conditions: list[ECondition] = field(default_factory=list)
    failure: str | None = None
    D: list[int] = field(default_factory=list)
    attempts: list[Case3Attempt] = field(default_factory=list)


@dataclass(frozen=True)
class Case3Data:
    m: int
    theta: RatFun
    S: Poly
    P: Poly
    n: int
    e: tuple[int, ...]
    sequence: dict[int, Poly]
    omega_polynomial: tuple[Poly, ...]
    """Coefficient of ``omega^i`` at index ``i``: ``S^i P_i / (m-i)!``."""


@dataclass
class KovacicTrace:
    poles: tuple[tuple[Fraction, int], ...] = ()
    order_at_infinity: int | float = 0
    case1: Case1Trace | None = None
    case2: Case2Trace | None = None
    case3: dict[int, Case3Trace] = field(default_factory=dict)


@dataclass(frozen=True)
class KovacicVerdict:
    case: int
    group_label: str
    data: Case1Data | Case2Data | Case3Data | None
    trace: KovacicTrace

    @property
    def liouvillian(self) -> bool:
        return self.case != 4

    @property
    def tag(self) -> str:
        return f"Case{self.case}"


# ---------------------------------------------------------------------------
# case 1


def case1_conditions(r: RatFun) -> tuple[list[PointCondition], str | None]:
    poles = pole_spectrum(r)
    conds: list[PointCondition] = []
    zero = RatFun(Poly())
    for c, order in poles.finite_poles:
        if order == 1:
            conds.append(PointCondition(c, "c1", 1, zero, Fraction(1), Fraction(1)))
        elif order == 2:
            b = _coefficient_minus_two(r, c)
            root = sqrt_rational(1 + 4 * as_rational(b))
            conds.append(PointCondition(c, "c2", 2, zero, (1 + root) / 2, (1 - root) / 2))
        elif order % 2 == 0:
            v = order // 2
            ls = laurent_sqrt_at_pole(r, c, v)
            ratio = ls.b_next / ls.a
            conds.append(PointCondition(c, "c3", order, principal_part_at(ls.principal, c), (ratio + v) / 2, (-ratio + v) / 2))
        else:
            return conds, f"pole of odd order {order} at {c}"
    o = poles.order_at_infinity
    if o > 2:
        conds.append(PointCondition(INF, "inf1", o, zero, Fraction(0), Fraction(1)))
    elif o == 2:
        b = _coefficient_minus_two(r, INF)
        root = sqrt_rational(1 + 4 * as_rational(b))
        conds.append(PointCondition(INF, "inf2", 2, zero, (1 + root) / 2, (1 - root) / 2))
    elif o <= 0 and o % 2 == 0:
        v = -o // 2
        ls = laurent_sqrt_at_infinity(r, v)
        ratio = ls.b_next / ls.a
        conds.append(PointCondition(INF, "inf3", o, RatFun(ls.principal), (ratio - v) / 2, (-ratio - v) / 2))
    else:
        return conds, f"odd order {o} at infinity"
    return conds, None


def case1(r: NormalODE2 | RatFun, trace: Case1Trace | None = None) -> Case1Data | None:
    r = _as_r(r)
    trace = trace if trace is not None else Case1Trace()
    conds, failure = case1_conditions(r)
    trace.conditions = conds
    if failure:
        trace.failure = failure
        return None
    finite, inf = conds[:-1], conds[-1]
    signs = ("+", "-")
    # value contributed by each point: alpha_inf and -alpha_c
    choices = [[-c.alpha(s) for s in signs] for c in finite] + [[inf.alpha(s) for s in signs]]
    by_n: dict[int, list[tuple[str, ...]]] = {}
    for idx in _admissible(choices, _nonneg_integer):
        eps = tuple(signs[i] for i in idx)
        n = int(as_rational(inf.alpha(eps[-1]) - sum((c.alpha(s) for c, s in zip(finite, eps)), Fraction(0))))
        by_n.setdefault(n, []).append(eps)
    trace.D = sorted(by_n)
    if not by_n:
        trace.failure = "D is empty"
        return None
    x = RatFun.x()
    for n in trace.D:
        seen: list[RatFun] = []
        for eps in by_n[n]:
            omega = inf.sqrt_r * (1 if eps[-1] == "+" else -1)
            for c, s in zip(finite, eps):
                omega = omega + c.sqrt_r * (1 if s == "+" else -1) + c.alpha(s) / (x - c.point)
            if omega in seen:
                continue
            seen.append(omega)
            two_omega = omega * 2
            zeroth = omega.derivative() + omega * omega - r

            def recu1(P: Poly, two_omega=two_omega, zeroth=zeroth) -> RatFun:
                return RatFun(P.derivative(2)) + two_omega * RatFun(P.derivative()) + zeroth * RatFun(P)

            P = _monic_kernel(recu1, n)
            trace.attempts.append(Case1Attempt(n, eps, omega, P))
            if P is not None:
                return Case1Data(omega, P, n, eps)
    trace.failure = "no monic polynomial satisfies the case-1 relation"
    return None


# ---------------------------------------------------------------------------
# case 2


def _e_set_from_root(base: int, root: Scalar, ks: Sequence[Scalar]) -> tuple[int, ...]:
    vals = set()
    for k in ks:
        v = base + k * root
        if is_integer(v):
            vals.add(int(as_rational(v)))
    return tuple(sorted(vals))


def case2_conditions(r: RatFun) -> list[ECondition]:
    poles = pole_spectrum(r)
    conds = []
    for c, order in poles.finite_poles:
        if order == 1:
            conds.append(ECondition(c, "c1", 1, (4,)))
        elif order == 2:
            root = sqrt_rational(1 + 4 * as_rational(_coefficient_minus_two(r, c)))
            conds.append(ECondition(c, "c2", 2, _e_set_from_root(2, root, (0, 2, -2))))
        else:
            conds.append(ECondition(c, "c3", order, (order,)))
    o = poles.order_at_infinity
    if o > 2:
        conds.append(ECondition(INF, "inf1", o, (0, 2, 4)))
    elif o == 2:
        root = sqrt_rational(1 + 4 * as_rational(_coefficient_minus_two(r, INF)))
        conds.append(ECondition(INF, "inf2", 2, _e_set_from_root(2, root, (0, 2, -2))))
    else:
        conds.append(ECondition(INF, "inf3", o, (int(o),)))
    return conds


def _theta(conds: Sequence[ECondition], e: Sequence[int], scale: Fraction) -> RatFun:
    x = RatFun.x()
    theta = RatFun(Poly())
    for c, ec in zip(conds, e):
        if ec:
            theta = theta + RatFun(Poly([scale * ec])) / (x - c.point)
    return theta


def case2(r: NormalODE2 | RatFun, trace: Case2Trace | None = None) -> Case2Data | None:
    r = _as_r(r)
    trace = trace if trace is not None else Case2Trace()
    conds = case2_conditions(r)
    trace.conditions = conds
    finite, inf = conds[:-1], conds[-1]
    choices = [[Fraction(-e) for e in c.E] for c in finite] + [[Fraction(e) for e in inf.E]]
    accept = lambda total: _nonneg_integer(total / 2)  # noqa: E731
    by_n: dict[int, list[tuple[int, ...]]] = {}
    for idx in _admissible(choices, accept):
        e = tuple(c.E[i] for c, i in zip(conds, idx))
        n = (e[-1] - sum(e[:-1])) // 2
        by_n.setdefault(n, []).append(e)
    trace.D = sorted(by_n)
    if not by_n:
        trace.failure = "D is empty"
        return None
    r1 = r.derivative()
    for n in trace.D:
        for e in by_n[n]:
            theta = _theta(finite, e[:-1], Fraction(1, 2))
            t1 = theta.derivative()
            t2 = t1.derivative()
            c2 = theta * 3
            c1 = t1 * 3 + theta * theta * 3 - r * 4
            c0 = t2 + theta * t1 * 3 + theta * theta * theta - r * theta * 4 - r1 * 2

            def recu2(P: Poly, c2=c2, c1=c1, c0=c0) -> RatFun:
                return RatFun(P.derivative(3)) + c2 * RatFun(P.derivative(2)) + c1 * RatFun(P.derivative()) + c0 * RatFun(P)

            P = _monic_kernel(recu2, n)
            trace.attempts.append(Case2Attempt(n, e, theta, P))
            if P is not None:
                phi = theta + RatFun(P.derivative(), P)
                quadratic = (RatFun.constant(1), -phi, phi.derivative() * Fraction(1, 2) + phi * phi * Fraction(1, 2) - r)
                return Case2Data(theta, P, n, e, phi, quadratic)
    trace.failure = "no monic polynomial satisfies the case-2 relation"
    return None


# ---------------------------------------------------------------------------
# case 3


def case3_conditions(r: RatFun, m: int) -> tuple[list[ECondition], str | None]:
    poles = pole_spectrum(r)
    conds = []
    ks = [Fraction(12 * k, m) for k in range(-m // 2, m // 2 + 1)]
    for c, order in poles.finite_poles:
        if order == 1:
            conds.append(ECondition(c, "c1", 1, (12,)))
        elif order == 2:
            root = sqrt_rational(1 + 4 * as_rational(_coefficient_minus_two(r, c)))
            conds.append(ECondition(c, "c2", 2, _e_set_from_root(6, root, ks)))
        else:
            return conds, f"pole of order {order} > 2 at {c}"
    o = poles.order_at_infinity
    if o < 2:
        return conds, f"order {o} < 2 at infinity"
    root = sqrt_rational(1 + 4 * as_rational(_coefficient_minus_two(r, INF)))
    conds.append(ECondition(INF, "inf", o, _e_set_from_root(6, root, ks)))
    return conds, None


def case3_sequence(r: RatFun, theta: RatFun, S: Poly, P: Poly, m: int) -> dict[int, Poly]:
    """``P_m, ..., P_{-1}`` from the descending recursion (``P_m = P``)."""
    S1 = S.derivative()
    Stheta = (RatFun(S) * theta)
    S2r = RatFun(S * S) * r
    if not Stheta.is_polynomial() or not S2r.is_polynomial():
        raise ValueError("S*theta and S^2*r must be polynomials in case 3")
    Stheta_p, S2r_p = Stheta.num, S2r.num
    seq: dict[int, Poly] = {m + 1: Poly(), m: P}
    for i in range(m, -1, -1):
        k = m - i
        seq[i - 1] = -S * seq[i].derivative() + (S1 * k - Stheta_p) * seq[i] - S2r_p * seq[i + 1] * (k * (i + 1))
    del seq[m + 1]
    return seq


def case3(r: NormalODE2 | RatFun, m: int, trace: Case3Trace | None = None) -> Case3Data | None:
    r = _as_r(r)
    if m not in FINITE_GROUP_NAMES:
        raise ValueError("m must be 4, 6 or 12")
    trace = trace if trace is not None else Case3Trace(m)
    conds, failure = case3_conditions(r, m)
    trace.conditions = conds
    if failure:
        trace.failure = failure
        return None
    finite, inf = conds[:-1], conds[-1]
    scale = Fraction(m, 12)
    choices = [[Fraction(-e) for e in c.E] for c in finite] + [[Fraction(e) for e in inf.E]]
    accept = lambda total: _nonneg_integer(total * scale)  # noqa: E731
    by_n: dict[int, list[tuple[int, ...]]] = {}
    for idx in _admissible(choices, accept):
        e = tuple(c.E[i] for c, i in zip(conds, idx))
        n = int(scale * (e[-1] - sum(e[:-1])))
        by_n.setdefault(n, []).append(e)
    trace.D = sorted(by_n)
    if not by_n:
        trace.failure = "D is empty"
        return None
    S = Poly.from_roots(c.point for c in finite)
    for n in trace.D:
        for e in by_n[n]:
            theta = _theta(finite, e[:-1], scale)
            basis_runs = [case3_sequence(r, theta, S, Poly.monomial(k), m) for k in range(n + 1)]
            top = basis_runs[n][m - 1]

            def last(P: Poly, runs=basis_runs) -> RatFun:
                acc = Poly()
                for k, c in enumerate(P.coeffs):
                    if c:
                        acc = acc + runs[k][-1] * c
                return RatFun(acc)

            P = _monic_kernel(last, n)
            if P is None:
                trace.attempts.append(Case3Attempt(n, e, theta, S, top, None, basis_runs[n][-1] if n == 0 else None))
                continue
            seq = case3_sequence(r, theta, S, P, m)
            trace.attempts.append(Case3Attempt(n, e, theta, S, seq[m - 1], P, seq[-1]))
            coeffs = tuple(
                (S**i) * seq[i] * Fraction(1, math.factorial(m - i)) for i in range(m + 1)
            )
            return Case3Data(m, theta, S, P, n, e, seq, coeffs)
    trace.failure = "P_{-1} does not vanish for any candidate"
    return None


# ---------------------------------------------------------------------------
# driver


def _as_r(r: NormalODE2 | RatFun) -> RatFun:
    return r.r if isinstance(r, NormalODE2) else r


def kovacic(r: NormalODE2 | RatFun) -> KovacicVerdict:
    """Run cases 1, 2, 3 (m = 4, 6, 12) in order; Case 4 if all fail."""
    r = _as_r(r)
    if not r:
        raise DegenerateEquation("r = 0: xi'' = 0 is outside the algorithm's pole framework")
    poles = pole_spectrum(r)
    trace = KovacicTrace(poles.finite_poles, poles.order_at_infinity)
    trace.case1 = Case1Trace()
    data1 = case1(r, trace.case1)
    if data1 is not None:
        return KovacicVerdict(1, GROUP_LABELS[1], data1, trace)
    trace.case2 = Case2Trace()
    data2 = case2(r, trace.case2)
    if data2 is not None:
        return KovacicVerdict(2, GROUP_LABELS[2], data2, trace)
    for m in (4, 6, 12):
        trace.case3[m] = Case3Trace(m)
        data3 = case3(r, m, trace.case3[m])
        if data3 is not None:
            return KovacicVerdict(3, f"finite-primitive({m})", data3, trace)
    return KovacicVerdict(4, GROUP_LABELS[4], None, trace)


# ---------------------------------------------------------------------------
# second solution


@dataclass(frozen=True)
class SecondSolution:
    """Recipe ``zeta2 = zeta1 * int dx / zeta1^2`` with ``zeta1 = P exp(int omega)``.

    No closed-form integration is attempted; :meth:`evaluate` integrates
    numerically along a real segment that avoids poles of ``omega`` and
    zeros of ``P``.
    """

    omega: RatFun
    P: Poly

    def integrand_description(self) -> str:
        return f"({self.P})^-2 * exp(-2 * int ({self.omega}) dx)"

    def first(self, x: float, x0: float) -> complex:
        """``zeta1`` normalised so that ``exp(int omega)`` is 1 at ``x0``."""
        return complex(self.P.evaluate_float(x)) * _cexp_integral(self.omega, x0, x)

    def evaluate(self, x: float, x0: float) -> complex:
        """``zeta2(x) = zeta1(x) * int_{x0}^{x} dt / zeta1(t)^2``."""

        def inv_sq(t: float) -> complex:
            return 1.0 / self.first(t, x0) ** 2

        re, _ = quad(lambda t: inv_sq(t).real, x0, x, epsabs=1e-13, epsrel=1e-12, limit=200)
        im, _ = quad(lambda t: inv_sq(t).imag, x0, x, epsabs=1e-13, epsrel=1e-12, limit=200)
        return self.first(x, x0) * complex(re, im)


def _cexp_integral(f: RatFun, a: float, b: float) -> complex:
    re, _ = quad(lambda t: complex(f.evaluate_float(t)).real, a, b, epsabs=1e-13, epsrel=1e-12, limit=200)
    im, _ = quad(lambda t: complex(f.evaluate_float(t)).imag, a, b, epsabs=1e-13, epsrel=1e-12, limit=200)
    return cmath.exp(complex(re, im))


def second_solution_factor(data: Case1Data) -> SecondSolution:
    return SecondSolution(data.omega, data.P)
