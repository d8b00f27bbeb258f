"""Hamiltonian change of variable: transcendental coefficients in t -> rational in z.

A change ``z = z(t)`` with ``(dz/dt)^2 = alpha(z)`` rational turns
``y_tt + a_hat*y_t + b_hat*y = 0`` into

    alpha*y'' + (alpha'/2 + sqrt(alpha)*a_hat)*y' + b_hat*y = 0

in the new variable, provided ``sqrt(alpha)*a_hat`` is itself rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateParameters, NonRationalDrift
from .ode import GeneralODE2
from .poly import Poly
from .ratfun import RatFun


@dataclass(frozen=True)
class HamiltonianChange:
    alpha: RatFun
    kind: str = "custom"
    parameter: Fraction | None = None

    def __post_init__(self):
        if not self.alpha:
            raise ValueError("alpha must be nonzero")

    @classmethod
    def cosine(cls, omega_sq) -> "HamiltonianChange":
        """``z = cos(omega*t)``: ``alpha = omega^2 (1 - z^2)``."""
        w = Fraction(omega_sq)
        return cls(RatFun(Poly([w, 0, -w])), "cosine", w)

    @classmethod
    def sine(cls, omega_sq) -> "HamiltonianChange":
        """``z = sin(omega*t)``; same ``alpha`` as the cosine change."""
        w = Fraction(omega_sq)
        return cls(RatFun(Poly([w, 0, -w])), "sine", w)

    @classmethod
    def exponential(cls, mu_sq) -> "HamiltonianChange":
        """``z = exp(mu*t)``: ``alpha = mu^2 z^2``."""
        m = Fraction(mu_sq)
        return cls(RatFun(Poly([0, 0, m])), "exponential", m)

    def sqrt_alpha(self) -> RatFun | None:
        """``sqrt(alpha)`` when it is rational in z, else ``None``."""
        n, d = self.alpha.num.sqrt(), self.alpha.den.sqrt()
        if n is None or d is None:
            return None
        return RatFun(n, d)


def algebrize(a_hat: RatFun, b_hat: RatFun, change: HamiltonianChange) -> GeneralODE2:
    """Rational-coefficient form ``y'' + A y' + B y = 0`` in the new variable.

    The sign of ``sqrt(alpha)`` only matters through ``a_hat``; with
    ``a_hat = 0`` the result depends on ``alpha`` and ``alpha'`` alone.
    """
    alpha = change.alpha
    drift = RatFun(Poly())
    if a_hat:
        root = change.sqrt_alpha()
        if root is None:
            raise NonRationalDrift(f"sqrt({alpha}) * a_hat is not rational in z")
        drift = root * a_hat
    A = (alpha.derivative() * Fraction(1, 2) + drift) / alpha
    B = b_hat / alpha
    return GeneralODE2(A, B)


def build_variational_b_hat(lam, omega2_sq) -> RatFun:
    """``b_hat = omega2^2 - lam/z`` for ``eta_tt = (lam/z - omega2^2) eta``."""
    lam, w = Fraction(lam), Fraction(omega2_sq)
    if not lam or not w:
        raise DegenerateParameters("lambda and omega2^2 must both be nonzero")
    # (w*z - lam)/z
    return RatFun(Poly([-lam, w]), Poly.x())
