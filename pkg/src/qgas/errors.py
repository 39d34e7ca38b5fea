"""Exception types shared across the package.

The hierarchy mirrors how callers need to react: domain violations
(bad input), singular points of the occupation function, and numeric
failures (series truncation, quadrature, root bracketing).
"""


class QgasError(Exception):
    """Base class for all package errors."""


class DomainError(QgasError, ValueError):
    """An argument lies outside the documented domain of an operation."""


class SingularityError(QgasError, ValueError):
    """Evaluation was requested exactly at a singular point.

    The canonical case is the Bose occupation at z = 1, beta_eps = 0,
    where the denominator vanishes.
    """


class TruncationError(QgasError, ArithmeticError):
    """A series hit its term cap before the terms dropped below tolerance."""

    def __init__(self, message: str, partial_sum: float, last_term: float):
        super().__init__(message)
        self.partial_sum = partial_sum
        self.last_term = last_term


class QuadratureError(QgasError, ArithmeticError):
    """Adaptive quadrature failed to reach the requested accuracy."""


class ConvergenceError(QgasError, ArithmeticError):
    """A bracketing solver found a sign change but not a root within its iteration cap."""
