"""Exact scalars: rationals plus formal sums of square roots.

Scalars are represented as either :class:`fractions.Fraction` (the rational
case) or :class:`SurdSum` (a finite Q-linear combination of ``sqrt(d)`` for
square-free integers ``d``).  Every arithmetic operation on a ``SurdSum``
returns a ``Fraction`` as soon as the irrational parts cancel, so rational
computations never pay for the surd machinery.

Negative radicands are allowed and mean ``i*sqrt(|d|)``; products follow
``sqrt(-p) * sqrt(-q) = -sqrt(p*q)``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from numbers import Rational
from typing import Iterable, Mapping, Union

from sympy import factorint

Scalar = Union[Fraction, "SurdSum"]


@lru_cache(maxsize=4096)
def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return ``(s, core)`` with ``n == s*s*core`` and ``core`` square-free.

    The sign of ``n`` is carried by ``core``; ``s`` is positive.
    """
    if n == 0:
        return 0, 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    root = math.isqrt(n)
    if root * root == n:
        return root, sign
    s, core = 1, 1
    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            core *= p
    return s, sign * core


@lru_cache(maxsize=4096)
def _basis_product(d1: int, d2: int) -> tuple[int, int]:
    # sqrt(d1) * sqrt(d2) == coef * sqrt(core)
    sign = -1 if (d1 < 0 and d2 < 0) else 1
    s, core = squarefree_decomposition(d1 * d2)
    return sign * s, core


def _prime_support(d: int) -> frozenset[int]:
    out = set(factorint(abs(d)))
    if d < 0:
        out.add(-1)
    return frozenset(out)


class SurdSum:
    """Immutable ``q0 + sum(q_i * sqrt(d_i))`` with square-free ``d_i``.

    Radicand ``1`` holds the rational part.  Zero coefficients are never
    stored.  Use :func:`surd` to build values (it collapses rational results
    to ``Fraction``); instantiate directly only when a ``SurdSum`` object is
    required regardless of value.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | None = None):
        acc: dict[int, Fraction] = {}
        for d, q in (terms or {}).items():
            q = Fraction(q)
            if not q or not d:
                continue
            s, core = squarefree_decomposition(int(d))
            acc[core] = acc.get(core, Fraction(0)) + q * s
        self._terms = {d: q for d, q in sorted(acc.items()) if q}
        self._hash = None

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def radicands(self) -> tuple[int, ...]:
        return tuple(self._terms)

    def coefficient(self, d: int) -> Fraction:
        return self._terms.get(d, Fraction(0))

    def is_rational(self) -> bool:
        return all(d == 1 for d in self._terms)

    def rational_part(self) -> Fraction:
        return self._terms.get(1, Fraction(0))

    def is_real(self) -> bool:
        return all(d > 0 for d in self._terms)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _as_surd(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for d, q in other._terms.items():
            acc[d] = acc.get(d, Fraction(0)) + q
        return _collapse(acc)

    __radd__ = __add__

    def __neg__(self):
        return _collapse({d: -q for d, q in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _as_surd(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_surd(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_surd(other)
        if other is None:
            return NotImplemented
        acc: dict[int, Fraction] = {}
        for d1, q1 in self._terms.items():
            for d2, q2 in other._terms.items():
                if d1 == 1:
                    c, d = 1, d2
                elif d2 == 1:
                    c, d = 1, d1
                else:
                    c, d = _basis_product(d1, d2)
                acc[d] = acc.get(d, Fraction(0)) + c * q1 * q2
        return _collapse(acc)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        """Multiplicative inverse via a linear solve over the Q-basis.

        The basis is every square-free product of the primes (and ``-1``)
        occurring in the radicands; the multiplication-by-``self`` matrix is
        inverted against the unit vector.
        """
        if not self._terms:
            raise ZeroDivisionError("SurdSum division by zero")
        if self.is_rational():
            return 1 / self.rational_part()
        gens = sorted(set().union(*(_prime_support(d) for d in self._terms)))
        basis = []
        for k in range(len(gens) + 1):
            for combo in combinations(gens, k):
                basis.append(math.prod(combo) if combo else 1)
        index = {d: i for i, d in enumerate(basis)}
        size = len(basis)
        # column j holds the coordinates of self * sqrt(basis[j])
        matrix = [[Fraction(0)] * size for _ in range(size)]
        for j, bj in enumerate(basis):
            prod = self * SurdSum({bj: 1})
            prod_terms = prod._terms if isinstance(prod, SurdSum) else {1: prod}
            for d, q in prod_terms.items():
                matrix[index[d]][j] = q
        rhs = [Fraction(0)] * size
        rhs[index[1]] = Fraction(1)
        sol = solve_rational_system(matrix, rhs)
        if sol is None:
            raise ZeroDivisionError("SurdSum is a zero divisor")
        return surd({basis[i]: q for i, q in enumerate(sol)})

    def __truediv__(self, other):
        other = _as_surd(other)
        if other is None:
            return NotImplemented
        inv = other.inverse()
        return self * inv

    def __rtruediv__(self, other):
        other = _as_surd(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result: Scalar = Fraction(1)
        base: Scalar = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / conversion -------------------------------------------
    def __eq__(self, other):
        other = _as_surd(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.rational_part())
            else:
                self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __complex__(self):
        total = 0j
        for d, q in self._terms.items():
            total += float(q) * (math.sqrt(d) if d > 0 else 1j * math.sqrt(-d))
        return total

    def __float__(self):
        if not self.is_real():
            raise TypeError(f"{self} is not real")
        return math.fsum(float(q) * math.sqrt(d) for d, q in self._terms.items())

    def __repr__(self):
        return f"SurdSum({self._terms!r})"

    def __str__(self):
        return format_scalar(self)


def _as_surd(value) -> SurdSum | None:
    if isinstance(value, SurdSum):
        return value
    if isinstance(value, (int, Rational)):
        return SurdSum({1: Fraction(value)})
    return None


def _collapse(acc: Mapping[int, Fraction]) -> Scalar:
    nz = {d: q for d, q in acc.items() if q}
    if all(d == 1 for d in nz):
        return nz.get(1, Fraction(0))
    out = SurdSum.__new__(SurdSum)
    out._terms = dict(sorted(nz.items()))
    out._hash = None
    return out


def surd(terms: Mapping[int, object]) -> Scalar:
    """Canonical scalar from a radicand -> coefficient mapping."""
    return _collapse(SurdSum(terms)._terms)


def scalar(value) -> Scalar:
    """Coerce ints, Fractions and SurdSums into the canonical scalar type."""
    if isinstance(value, SurdSum):
        return _collapse(value._terms)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


def is_rational(value: Scalar) -> bool:
    return not isinstance(value, SurdSum) or value.is_rational()


def as_rational(value: Scalar) -> Fraction:
    if isinstance(value, SurdSum):
        if not value.is_rational():
            raise ValueError(f"{value} is irrational")
        return value.rational_part()
    return Fraction(value)


def is_integer(value: Scalar) -> bool:
    return is_rational(value) and as_rational(value).denominator == 1


def sqrt_rational(q) -> Scalar:
    """Exact square root of a rational number (imaginary if ``q < 0``)."""
    q = Fraction(q)
    if q == 0:
        return Fraction(0)
    s, core = squarefree_decomposition(q.numerator * q.denominator)
    return surd({core: Fraction(s, q.denominator)})


def sqrt_scalar(value: Scalar) -> Scalar:
    """Square root of a scalar; only rational radicands are supported."""
    if is_rational(value):
        return sqrt_rational(as_rational(value))
    raise ValueError(f"square root of irrational scalar {value} is outside the surd tower")


def to_complex(value: Scalar) -> complex:
    return complex(value)


def to_float(value: Scalar) -> float:
    return float(value)


def format_scalar(value: Scalar) -> str:
    """Human/parseable rendering, e.g. ``3/4``, ``1/2 + 1/2*sqrt(5)``."""
    if not isinstance(value, SurdSum):
        return str(Fraction(value))
    parts = []
    for d, q in value._terms.items():
        if d == 1:
            parts.append(str(q))
            continue
        root = f"sqrt({d})"
        if q == 1:
            parts.append(root)
        elif q == -1:
            parts.append(f"-{root}")
        else:
            parts.append(f"{q}*{root}")
    text = " + ".join(parts)
    return text.replace("+ -", "- ")


def solve_rational_system(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Solve a square rational system exactly; ``None`` if singular."""
    n = len(matrix)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def all_rational(values: Iterable[Scalar]) -> bool:
    return all(is_rational(v) for v in values)
