"""Fixed-step integration, variational flow, Poincare sections and the
transport check between the time-domain and algebrized equations."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import RhoCollapse, SingularityInInterval
from .wilberforce import (
    STATE_FIELDS,
    DimensionlessParams,
    equations_of_motion,
    hamiltonian_energy,
    heun_form,
    jacobian,
)

Vector = np.ndarray
RHS = Callable[[Vector], Vector]


def rk4_step(f: RHS, y: Vector, h: float) -> Vector:
    k1 = f(y)
    k2 = f(y + 0.5 * h * k1)
    k3 = f(y + 0.5 * h * k2)
    k4 = f(y + h * k3)
    return y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    dt: float
    energy: np.ndarray
    derivatives: np.ndarray

    def energy_drift(self) -> float:
        """``max |H(t) - H(0)| / |H(0)|`` (absolute when ``H(0) = 0``)."""
        scale = abs(self.energy[0]) or 1.0
        return float(np.max(np.abs(self.energy - self.energy[0])) / scale)


def _step_count(t_end: float, dt: float) -> int:
    if dt <= 0 or t_end < 0:
        raise ValueError("dt must be positive and t_end non-negative")
    n = int(round(t_end / dt))
    if not math.isclose(n * dt, t_end, rel_tol=1e-9, abs_tol=1e-12):
        raise ValueError("t_end must be an integer multiple of dt")
    return n


def simulate(d: DimensionlessParams, state0: Sequence[float], t_end: float, dt: float) -> Trajectory:
    """RK4 on the full Hamiltonian flow; stops with :class:`RhoCollapse` if rho <= 0."""
    n = _step_count(t_end, dt)
    rhs = lambda y: equations_of_motion(y, d)  # noqa: E731
    states = np.empty((n + 1, 6))
    y = np.asarray(state0, dtype=float).copy()
    if y[0] <= 0:
        raise RhoCollapse(f"initial rho = {y[0]} must be positive")
    states[0] = y
    for i in range(n):
        y = rk4_step(rhs, y, dt)
        if not y[0] > 0:
            raise RhoCollapse(f"rho reached {y[0]} at t = {(i + 1) * dt}")
        states[i + 1] = y
    times = np.arange(n + 1) * dt
    energy = np.array([hamiltonian_energy(s, d) for s in states])
    derivs = np.array([rhs(s) for s in states])
    return Trajectory(times, states, dt, energy, derivs)


def linear_closed_form(b, c, state0: Sequence[float], times: np.ndarray) -> np.ndarray:
    """Exact ``(rho, phi)`` of the linear subsystem at ``f = 0``, ``theta = P_theta = 0``.

    ``x = (rho - 1, phi)`` obeys ``x'' = -K x`` with ``K = [[1, c/2], [c/2, b]]``.
    """
    K = np.array([[1.0, float(c) / 2], [float(c) / 2, float(b)]])
    w2, V = np.linalg.eigh(K)
    x0 = V.T @ np.array([state0[0] - 1.0, state0[2]])
    v0 = V.T @ np.array([state0[3], state0[5]])
    cols = []
    for j in range(2):
        if w2[j] > 0:
            w = math.sqrt(w2[j])
            cols.append(x0[j] * np.cos(w * times) + v0[j] / w * np.sin(w * times))
        elif w2[j] < 0:
            w = math.sqrt(-w2[j])
            cols.append(x0[j] * np.cosh(w * times) + v0[j] / w * np.sinh(w * times))
        else:
            cols.append(x0[j] + v0[j] * times)
    modal = np.vstack(cols)
    x = V @ modal
    return np.column_stack([x[0] + 1.0, x[1]])


def convergence_ratio(d: DimensionlessParams, state0: Sequence[float], t_end: float, dt: float) -> float:
    """Ratio of global errors at ``dt`` and ``dt/2``; about 16 for RK4.

    Errors are measured at ``t_end`` against a run with step ``dt/16``.
    """
    ref = simulate(d, state0, t_end, dt / 16).states[-1]
    e1 = np.linalg.norm(simulate(d, state0, t_end, dt).states[-1] - ref)
    e2 = np.linalg.norm(simulate(d, state0, t_end, dt / 2).states[-1] - ref)
    return float(e1 / e2)


# -- variational flow ----------------------------------------------------------


@dataclass
class FundamentalTrajectory:
    times: np.ndarray
    matrices: np.ndarray
    """Fundamental matrices, shape ``(N, 6, 6)``, identity at ``t = 0``."""
    base: np.ndarray

    def determinants(self) -> np.ndarray:
        return np.linalg.det(self.matrices)


def variational_integrate(base: Trajectory, d: DimensionlessParams) -> FundamentalTrajectory:
    """Integrate ``X' = J(x(t)) X`` along ``base`` with the same steps.

    The base orbit is re-integrated jointly so every RK4 stage sees the exact
    intermediate state; the recomputed orbit reproduces ``base`` bitwise.
    """
    dt = base.dt
    n = len(base.times) - 1
    state0 = base.states[0]

    def rhs(y: Vector) -> Vector:
        s = y[:6]
        X = y[6:].reshape(6, 6)
        return np.concatenate([equations_of_motion(s, d), (jacobian(s, d) @ X).ravel()])

    y = np.concatenate([np.asarray(state0, dtype=float), np.eye(6).ravel()])
    orbit = np.empty((n + 1, 6))
    mats = np.empty((n + 1, 6, 6))
    orbit[0], mats[0] = y[:6], np.eye(6)
    for i in range(n):
        y = rk4_step(rhs, y, dt)
        if not y[0] > 0:
            raise RhoCollapse(f"rho reached {y[0]} at t = {(i + 1) * dt}")
        orbit[i + 1] = y[:6]
        mats[i + 1] = y[6:].reshape(6, 6)
    return FundamentalTrajectory(base.times.copy(), mats, orbit)


NORMAL_BLOCK = (1, 4)
TANGENT_BLOCK = (0, 2, 3, 5)


def block_coupling(ft: FundamentalTrajectory) -> float:
    """Largest entry linking ``(theta, P_theta)`` with the other coordinates."""
    n_idx, t_idx = list(NORMAL_BLOCK), list(TANGENT_BLOCK)
    a = ft.matrices[:, n_idx][:, :, t_idx]
    b = ft.matrices[:, t_idx][:, :, n_idx]
    return float(max(np.max(np.abs(a)), np.max(np.abs(b))))


# -- transport check -------------------------------------------------------------


def _crosses_singularity(omega: float, t0: float, t1: float) -> float | None:
    """First ``t`` in ``[t0, t1]`` with ``omega*t`` a multiple of pi/2, if any."""
    lo, hi = sorted((omega * t0, omega * t1))
    k = math.ceil(lo / (math.pi / 2) - 1e-12)
    x = k * math.pi / 2
    return x / omega if x <= hi + 1e-12 else None


@dataclass
class TransportResult:
    t: np.ndarray
    eta_t: np.ndarray
    eta_z: np.ndarray
    max_error: float


def second_order_transport_check(
    lam, omega2_sq, t_interval: tuple[float, float], eta0: float = 1.0, deta0: float = 0.0, steps: int = 4000
) -> TransportResult:
    """Solve ``eta'' = (lam/cos(w t) - w^2) eta`` in ``t`` and the algebrized
    equation in ``z = cos(w t)``, then compare on a shared grid.

    The z-coefficients come from the exact algebrized equation, shifted back
    to the original variable.
    """
    lam, w_sq = Fraction(lam), Fraction(omega2_sq)
    if w_sq <= 0:
        raise ValueError("the cosine change needs omega2^2 > 0")
    w = math.sqrt(float(w_sq))
    t0, t1 = map(float, t_interval)
    hit = _crosses_singularity(w, t0, t1)
    if hit is not None:
        raise SingularityInInterval(f"z = cos({w:.6g} t) hits a singular point at t = {hit:.6g}")
    ode = heun_form(lam, w_sq).shift(-1)
    A, B = ode.a, ode.b
    lf = float(lam)

    def rhs_t(t: float, y: Vector) -> Vector:
        return np.array([y[1], (lf / math.cos(w * t) - w * w) * y[0]])

    def rhs_z(z: float, y: Vector) -> Vector:
        return np.array([y[1], -A.evaluate_float(z) * y[1] - B.evaluate_float(z) * y[0]])

    ts = np.linspace(t0, t1, steps + 1)
    zs = np.cos(w * ts)
    y_t = np.array([eta0, deta0])
    # dy/dz = (dy/dt) / (dz/dt)
    y_z = np.array([eta0, deta0 / (-w * math.sin(w * t0))])
    eta_t, eta_z = [eta0], [eta0]
    for i in range(steps):
        y_t = _rk4_nonautonomous(rhs_t, ts[i], y_t, ts[i + 1] - ts[i])
        y_z = _rk4_nonautonomous(rhs_z, zs[i], y_z, zs[i + 1] - zs[i])
        eta_t.append(y_t[0])
        eta_z.append(y_z[0])
    eta_t, eta_z = np.array(eta_t), np.array(eta_z)
    return TransportResult(ts, eta_t, eta_z, float(np.max(np.abs(eta_t - eta_z))))


def _rk4_nonautonomous(f: Callable[[float, Vector], Vector], t: float, y: Vector, h: float) -> Vector:
    k1 = f(t, y)
    k2 = f(t + h / 2, y + h / 2 * k1)
    k3 = f(t + h / 2, y + h / 2 * k2)
    k4 = f(t + h, y + h * k3)
    return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


# -- Poincare sections ---------------------------------------------------------------


@dataclass(frozen=True)
class SectionPoint:
    t: float
    state: tuple[float, ...]
    direction: int


def coordinate_index(name: str | int) -> int:
    if isinstance(name, int):
        return name
    aliases = {"P_rho": 3, "P_theta": 4, "P_phi": 5}
    if name in aliases:
        return aliases[name]
    return STATE_FIELDS.index(name)


def _hermite(y0: Vector, y1: Vector, d0: Vector, d1: Vector, h: float, s: float) -> Vector:
    h00 = 2 * s**3 - 3 * s**2 + 1
    h10 = s**3 - 2 * s**2 + s
    h01 = -2 * s**3 + 3 * s**2
    h11 = s**3 - s**2
    return h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1


def poincare_section(traj: Trajectory, coordinate: str | int, value: float, direction: int = 1) -> list[SectionPoint]:
    """Crossings of ``coordinate = value``; ``direction`` is +1, -1 or 0 (both).

    Crossing times are located with brentq on cubic Hermite interpolants of
    the stored states and derivatives.
    """
    j = coordinate_index(coordinate)
    g = traj.states[:, j] - value
    out: list[SectionPoint] = []
    h = traj.dt
    for i in range(len(g) - 1):
        g0, g1 = g[i], g[i + 1]
        if g0 == 0.0 or g0 * g1 >= 0:
            if not (g0 != 0.0 and g1 == 0.0):
                continue
        sign = 1 if g1 > g0 else -1
        if direction and sign != direction:
            continue
        y0, y1 = traj.states[i], traj.states[i + 1]
        d0, d1 = traj.derivatives[i], traj.derivatives[i + 1]
        fn = lambda s: _hermite(y0, y1, d0, d1, h, s)[j] - value  # noqa: E731
        s = 1.0 if g1 == 0.0 else brentq(fn, 0.0, 1.0, xtol=1e-15)
        state = _hermite(y0, y1, d0, d1, h, s)
        out.append(SectionPoint(float(traj.times[i] + s * h), tuple(float(v) for v in state), sign))
    return out
