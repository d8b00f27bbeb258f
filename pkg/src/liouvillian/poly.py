"""Dense univariate polynomials over the exact scalar tower."""

from __future__ import annotations

from fractions import Fraction
from math import comb, lcm
from typing import Iterable, Sequence

from .surd import Scalar, SurdSum, format_scalar, is_rational, as_rational, scalar, sqrt_scalar

ZERO_DEGREE = -1
"""Degree reported for the zero polynomial."""


class Poly:
    """Polynomial with coefficient ``coeffs[i]`` on ``x**i``.

    Trailing zeros are stripped on construction so the leading coefficient of
    a nonzero polynomial is never zero; the zero polynomial has no
    coefficients and degree :data:`ZERO_DEGREE`.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [scalar(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[Scalar, ...] = tuple(cs)

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        out = cls([1])
        for c in roots:
            out = out * cls([-scalar(c), 1])
        return out

    # -- basic queries ----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def leading(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Scalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_rational(self) -> bool:
        return all(is_rational(c) for c in self.coeffs)

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        inv = 1 / lc
        return Poly(c * inv for c in self.coeffs)

    # -- ring operations --------------------------------------------------
    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([a[i] + b[i] if i < len(b) else a[i] for i in range(len(a))])

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, SurdSum)):
            if not other:
                return Poly()
            return Poly(c * other for c in self.coeffs)
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative polynomial power")
        result, base = Poly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        other = _as_poly(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return Poly(), self
        inv_lc = 1 / other.coeffs[-1]
        quot = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq]
            if not c:
                continue
            c = c * inv_lc
            quot[k] = c
            for j, b in enumerate(other.coeffs):
                if b:
                    rem[k + j] = rem[k + j] - c * b
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def __eq__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    # -- calculus / evaluation --------------------------------------------
    def derivative(self, k: int = 1) -> "Poly":
        p = self
        for _ in range(k):
            p = Poly(i * c for i, c in enumerate(p.coeffs) if i > 0)
        return p

    def __call__(self, value) -> Scalar:
        acc: Scalar = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def evaluate_float(self, value):
        """Horner evaluation in floating point (complex if a coefficient is)."""
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * value + (complex(c) if isinstance(c, SurdSum) and not c.is_real() else float(c))
        return acc

    def taylor_shift(self, h) -> "Poly":
        """Return ``p(x + h)``."""
        h = scalar(h)
        if not h or len(self.coeffs) <= 1:
            return self
        n = len(self.coeffs)
        out = [Fraction(0)] * n
        powers = [Fraction(1)]
        for _ in range(n):
            powers.append(powers[-1] * h)
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            for j in range(k + 1):
                out[j] = out[j] + c * comb(k, j) * powers[k - j]
        return Poly(out)

    def compose(self, other: "Poly") -> "Poly":
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * other + Poly([c])
        return out

    def reversed_coeffs(self, n: int | None = None) -> "Poly":
        """``x**n * p(1/x)`` with ``n`` defaulting to the degree."""
        n = self.degree if n is None else n
        cs = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return Poly(reversed(cs[: n + 1]))

    def content_integer(self) -> tuple[Fraction, list[int]]:
        """Split a rational polynomial as ``scale * integer_poly``."""
        qs = [as_rational(c) for c in self.coeffs]
        den = lcm(*(q.denominator for q in qs)) if qs else 1
        ints = [int(q * den) for q in qs]
        return Fraction(1, den), ints

    def sqrt(self) -> "Poly | None":
        """Exact polynomial square root, or ``None`` if not a perfect square."""
        if not self.coeffs:
            return Poly()
        if self.degree % 2:
            return None
        try:
            lead = sqrt_scalar(self.leading)
        except ValueError:
            return None
        m = self.degree // 2
        root = [Fraction(0)] * (m + 1)
        root[m] = lead
        inv = 1 / (2 * lead)
        for k in range(1, m + 1):
            # coefficient of x^(2m-k) in root^2
            acc = self.coeff(2 * m - k)
            for i in range(1, k):
                acc = acc - root[m - i] * root[m - k + i]
            root[m - k] = acc * inv
        cand = Poly(root)
        return cand if cand * cand == self else None

    # -- printing ---------------------------------------------------------
    def to_string(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else var if k == 1 else f"{var}^{k}"
            cs = format_scalar(c)
            if isinstance(c, SurdSum) and len(c.radicands()) > 1:
                cs = f"({cs})"
            if not mono:
                terms.append(cs)
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{cs}*{mono}")
        text = " + ".join(terms)
        return text.replace("+ -", "- ")

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Poly({self.to_string()!r})"


def _as_poly(value) -> Poly | None:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction, SurdSum)):
        return Poly([value])
    return None


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both inputs are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return Poly()
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def solve_linear(rows: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]) -> list[Scalar] | None:
    """One solution of a (possibly non-square) exact linear system.

    Free variables are set to zero.  Returns ``None`` if inconsistent.
    """
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    aug = [list(map(scalar, row)) + [scalar(rhs[i])] for i, row in enumerate(rows)]
    pivots: list[int] = []
    r = 0
    for col in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if aug[i][col]), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [v * inv if v else v for v in aug[r]]
        for i in range(n_rows):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b if b else a for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == n_rows:
            break
    for i in range(r, n_rows):
        if aug[i][n_cols]:
            return None
    sol: list[Scalar] = [Fraction(0)] * n_cols
    for i, col in enumerate(pivots):
        sol[col] = aug[i][n_cols]
    return sol
