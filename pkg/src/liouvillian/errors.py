"""Exception hierarchy shared by the symbolic and numeric layers."""


class LiouvillianError(Exception):
    """Base class for every error raised by this package."""


class ZeroDenominator(LiouvillianError, ZeroDivisionError):
    pass


class NonRationalPoles(LiouvillianError):
    """A denominator has an irreducible factor of degree >= 2 over Q."""


class OddPoleOrder(LiouvillianError):
    pass


class OddInfinityOrder(LiouvillianError):
    pass


class NotHeunShape(LiouvillianError):
    pass


class NonRationalDrift(LiouvillianError):
    """sqrt(alpha) * a_hat does not lie in Q(z)."""


class DegenerateParameters(LiouvillianError):
    pass


class DegenerateEquation(LiouvillianError):
    pass


class SurdFrequency(LiouvillianError):
    """The squared frequency entering the pipeline is irrational."""


class RhoCollapse(LiouvillianError):
    """The radial coordinate reached rho <= 0 during integration."""


class SingularityInInterval(LiouvillianError):
    pass


class ExprSyntaxError(LiouvillianError, ValueError):
    """Parse failure; ``column`` is the 0-based offset of the offending token."""

    def __init__(self, message: str, column: int, expected: tuple[str, ...] = ()):
        self.column = column
        self.expected = expected
        detail = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"{message} at column {column}{detail}")
