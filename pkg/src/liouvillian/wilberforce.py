"""Wilberforce spring-pendulum: parameters, dynamics, normal modes and the
end-to-end non-integrability pipeline."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .algebrization import HamiltonianChange, algebrize, build_variational_b_hat
from .errors import DegenerateParameters, SurdFrequency
from .kovacic import KovacicVerdict, kovacic
from .ode import GeneralODE2, HeunParams, NormalODE2, heun_parameters, shift, to_normal_form
from .poly import Poly
from .ratfun import RatFun
from .surd import Scalar, as_rational, is_rational, sqrt_rational


@dataclass(frozen=True)
class PhysicalParams:
    m: Fraction
    J: Fraction
    k: Fraction
    r0: Fraction
    lambda_t: Fraction
    eps: Fraction
    g: Fraction

    def __post_init__(self):
        for name in ("m", "J", "k", "r0", "g"):
            if Fraction(getattr(self, name)) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class DimensionlessParams:
    b: Fraction
    c: Fraction
    f: Fraction
    a: Fraction = Fraction(1)


class State(NamedTuple):
    rho: float
    theta: float
    phi: float
    p_rho: float
    p_theta: float
    p_phi: float


STATE_FIELDS = State._fields


def adimensionalize(p: PhysicalParams) -> tuple[DimensionlessParams, Fraction, Fraction, Fraction]:
    """Return ``(params, ell, omega_p^2, omega_s^2)`` with ``ell = r0 + m g / k``."""
    m, J, k, r0, lam, eps, g = (Fraction(v) for v in (p.m, p.J, p.k, p.r0, p.lambda_t, p.eps, p.g))
    ell = r0 + m * g / k
    omega_p_sq = g / ell
    omega_s_sq = k / m
    f = omega_p_sq / omega_s_sq
    params = DimensionlessParams(b=lam / (k * ell**2), c=eps / (k * ell), f=f, a=J / (m * ell**2))
    return params, ell, omega_p_sq, omega_s_sq


# -- dynamics ------------------------------------------------------------------


def _floats(d: DimensionlessParams) -> tuple[float, float, float, float]:
    return float(d.a), float(d.b), float(d.c), float(d.f)


def hamiltonian_energy(s: Sequence[float], d: DimensionlessParams) -> float:
    rho, theta, phi, pr, pt, pp = s
    a, b, c, f = _floats(d)
    return (
        0.5 * (pr * pr + pt * pt / (rho * rho) + pp * pp / a)
        + 0.5 * (rho - 1 + f) ** 2
        + 0.5 * b * phi * phi
        + 0.5 * c * (rho - 1) * phi
        - f * rho * math.cos(theta)
    )


def equations_of_motion(s: Sequence[float], d: DimensionlessParams) -> np.ndarray:
    """Canonical equations of :func:`hamiltonian_energy`.

    ``P_rho' = P_theta^2/rho^3 - (rho - 1 + f) - (c/2) phi + f cos(theta)``.
    """
    rho, theta, phi, pr, pt, pp = s
    a, b, c, f = _floats(d)
    return np.array(
        [
            pr,
            pt / (rho * rho),
            pp / a,
            pt * pt / rho**3 - (rho - 1 + f) - 0.5 * c * phi + f * math.cos(theta),
            -f * rho * math.sin(theta),
            -b * phi - 0.5 * c * (rho - 1),
        ]
    )


def jacobian(s: Sequence[float], d: DimensionlessParams) -> np.ndarray:
    """Jacobian of :func:`equations_of_motion`; drives the variational system."""
    rho, theta, phi, pr, pt, pp = s
    a, b, c, f = _floats(d)
    J = np.zeros((6, 6))
    J[0, 3] = 1.0
    J[1, 0] = -2 * pt / rho**3
    J[1, 4] = 1 / rho**2
    J[2, 5] = 1 / a
    J[3, 0] = -3 * pt * pt / rho**4 - 1
    J[3, 1] = -f * math.sin(theta)
    J[3, 2] = -0.5 * c
    J[3, 4] = 2 * pt / rho**3
    J[4, 0] = -f * math.sin(theta)
    J[4, 1] = -f * rho * math.cos(theta)
    J[5, 0] = -0.5 * c
    J[5, 2] = -b
    return J


# -- normal modes ----------------------------------------------------------------


@dataclass(frozen=True)
class NormalModes:
    omega1_sq: Scalar
    omega2_sq: Scalar
    tan_alpha: Scalar | None
    """``None`` means the rotation angle is pi/2 (``c = 0`` and ``b > 1``)."""
    discriminant: Fraction


def normal_modes(b, c) -> NormalModes:
    """Frequencies of the invariant-plane oscillators, exact in the surd tower."""
    b, c = Fraction(b), Fraction(c)
    disc = (1 - b) ** 2 + c * c
    root = sqrt_rational(disc)
    w1 = (1 + b + root) / 2
    w2 = (1 + b - root) / 2
    if c:
        tan_alpha: Scalar | None = (b - 1 + root) / c
    else:
        tan_alpha = Fraction(0) if b <= 1 else None
    return NormalModes(w1, w2, tan_alpha, disc)


def rotated_quadratic_form(b, c, tan_alpha: Scalar | None) -> tuple[Scalar, Scalar, Scalar]:
    """``(k11, k12, k22)`` of ``z^2 + b phi^2 + c z phi`` after the rotation.

    ``z = x1 cos(a) - x2 sin(a)``, ``phi = x1 sin(a) + x2 cos(a)``; the form
    becomes ``k11 x1^2 + 2 k12 x1 x2 + k22 x2^2``.
    """
    b, c = Fraction(b), Fraction(c)
    if tan_alpha is None:
        cos2, sin2, cs = Fraction(0), Fraction(1), Fraction(0)
    else:
        denom = 1 + tan_alpha * tan_alpha
        cos2 = 1 / denom
        sin2 = tan_alpha * tan_alpha / denom
        cs = tan_alpha / denom
    k11 = cos2 + b * sin2 + c * cs
    k22 = sin2 + b * cos2 - c * cs
    k12 = (b - 1) * cs + c * (cos2 - sin2) / 2
    return k11, k12, k22


def tangential_matrix(b, c) -> list[list[Fraction]]:
    """Linear flow on the invariant plane in ``(rho, phi, P_rho, P_phi)``."""
    b, c = Fraction(b), Fraction(c)
    h = c / 2
    z = Fraction(0)
    return [
        [z, z, Fraction(1), z],
        [z, z, z, Fraction(1)],
        [Fraction(-1), -h, z, z],
        [-h, -b, z, z],
    ]


# -- variational equation ----------------------------------------------------------


@dataclass(frozen=True)
class VariationalParams:
    B: Fraction
    lam: Fraction
    omega2_sq: Scalar

    @classmethod
    def from_physics(cls, f, B, omega2_sq) -> "VariationalParams":
        f, B = Fraction(f), Fraction(B)
        if not f or not B:
            raise DegenerateParameters("f and B must be nonzero")
        if not omega2_sq:
            raise DegenerateParameters("omega2^2 must be nonzero")
        return cls(B, f / B, omega2_sq)


def heun_form(lam, omega_sq, branch: str = "cosine") -> GeneralODE2:
    """Algebrized variational equation translated so its singularities are {0, 1, 2}.

    ``branch="cosine"`` follows ``rho = B cos(omega2 t)`` with ``z = cos(omega2 t)``;
    ``branch="sine"`` follows ``rho = A sin(omega1 t)`` with ``z = sin(omega1 t)``.
    Both give ``b_hat = omega^2 - lam/z`` and the same ``alpha``.
    """
    if branch not in ("cosine", "sine"):
        raise ValueError("branch must be 'cosine' or 'sine'")
    change = getattr(HamiltonianChange, branch)(omega_sq)
    ode = algebrize(RatFun(Poly()), build_variational_b_hat(lam, omega_sq), change)
    return shift(ode, 1)


def closed_form_r(lam, omega_sq) -> RatFun:
    lam, w = Fraction(lam), Fraction(omega_sq)
    num = Poly([3 * w, 8 * lam + 3 * w, -(4 * lam + 9 * w), 3 * w])
    den = Poly.from_roots([0, 0, 1, 2, 2]) * (4 * w)
    return RatFun(num, den)


def normal_variational_r(v: VariationalParams) -> NormalODE2:
    """Reduced normal variational equation, built twice and cross-checked."""
    if not v.lam or not v.omega2_sq or not v.B:
        raise DegenerateParameters("lambda, omega2^2 and B must be nonzero")
    if not is_rational(v.omega2_sq):
        raise SurdFrequency(
            f"omega2^2 = {v.omega2_sq} is irrational; choose b, c with (1-b)^2 + c^2 a rational square (e.g. c = 0)"
        )
    w = as_rational(v.omega2_sq)
    normal, _ = to_normal_form(heun_form(v.lam, w))
    direct = closed_form_r(v.lam, w)
    if normal.r != direct:
        raise AssertionError(f"compositional r {normal.r} differs from closed form {direct}")
    return normal


def sine_branch_r(f, A, omega1_sq) -> NormalODE2:
    """Reduced normal variational equation along ``rho = A sin(omega1 t)``."""
    f, A = Fraction(f), Fraction(A)
    if not f or not A or not omega1_sq:
        raise DegenerateParameters("f, A and omega1^2 must be nonzero")
    if not is_rational(omega1_sq):
        raise SurdFrequency(f"omega1^2 = {omega1_sq} is irrational")
    normal, _ = to_normal_form(heun_form(f / A, as_rational(omega1_sq), "sine"))
    return normal


@dataclass(frozen=True)
class IntegrabilityReport:
    b: Fraction
    c: Fraction
    f: Fraction
    B: Fraction
    conclusion: str
    """``NonIntegrable``, ``Degenerate`` or ``NoObstruction``."""
    modes: NormalModes
    lam: Fraction | None = None
    heun: HeunParams | None = None
    r: RatFun | None = None
    verdict: KovacicVerdict | None = None


def analyze_integrability(b, c, f, B) -> IntegrabilityReport:
    """Run the full pipeline for the invariant-plane solution ``rho = B cos(omega2 t)``."""
    b, c, f, B = (Fraction(v) for v in (b, c, f, B))
    if not f:
        raise DegenerateParameters("f = 0 makes the normal variational equation trivial")
    if not B:
        raise DegenerateParameters("B must be nonzero")
    modes = normal_modes(b, c)
    if c * c == 4 * b:
        return IntegrabilityReport(b, c, f, B, "Degenerate", modes)
    v = VariationalParams.from_physics(f, B, modes.omega2_sq)
    normal = normal_variational_r(v)
    heun = heun_parameters(heun_form(v.lam, as_rational(v.omega2_sq)))
    verdict = kovacic(normal)
    conclusion = "NonIntegrable" if verdict.case == 4 else "NoObstruction"
    return IntegrabilityReport(b, c, f, B, conclusion, modes, v.lam, heun, normal.r, verdict)


def _analyze_row(row: tuple) -> IntegrabilityReport | Exception:
    try:
        return analyze_integrability(*row)
    except (DegenerateParameters, SurdFrequency) as exc:
        return exc


def sweep(rows: Iterable[tuple], jobs: int = 1) -> list[IntegrabilityReport | Exception]:
    """Analyse many ``(b, c, f, B)`` tuples; results keep the input order."""
    rows = list(rows)
    if jobs <= 1:
        return [_analyze_row(r) for r in rows]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_analyze_row, rows))
