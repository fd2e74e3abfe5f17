"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class AgDistError(Exception):
    """Base class for every error raised by the package."""


class ConfigError(AgDistError, ValueError):
    pass


class FieldError(AgDistError, ValueError):
    pass


class NotCoprime(AgDistError, ValueError):
    pass


class BadLeadingCoefficient(AgDistError, ValueError):
    pass


class WeightViolation(AgDistError, ValueError):
    pass


class SingularPoint(AgDistError, ValueError):
    def __init__(self, point):
        super().__init__(f"curve is singular at affine point {point}")
        self.point = point


class ZeroFunction(AgDistError, ValueError):
    pass


class GroebnerAssertionFailure(AgDistError, AssertionError):
    pass


class LengthMismatch(AgDistError, ValueError):
    pass


class FieldMismatch(AgDistError, ValueError):
    pass


class GOnEvaluationPoint(AgDistError, ValueError):
    pass


class DegenerateRank(AgDistError, ValueError):
    pass


class UnrepresentableDegree(AgDistError, ValueError):
    pass


class NonIntegerResult(AgDistError, ArithmeticError):
    pass


class HypothesisNotMet(AgDistError, ValueError):
    pass


class CaseClassificationMismatch(AgDistError, AssertionError):
    pass


class InfeasibleWeight(AgDistError, ValueError):
    pass


class PreconditionViolated(AgDistError, ValueError):
    pass
