"""Exception hierarchy.

Every error carries the CLI exit code it maps to, so the command-line front
end never needs its own translation table.
"""

from __future__ import annotations


class ISLogicError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class ValidationError(ISLogicError, ValueError):
    exit_code = 2


class NegativeEntry(ValidationError):
    pass


class SumNotOne(ValidationError):
    pass


class ZeroPriorRow(ValidationError):
    pass


class EmptyAxis(ValidationError):
    pass


class ParseError(ValidationError):
    pass


class ZeroProbabilityObservation(ISLogicError, ValueError):
    pass


class UndefinedPosterior(ISLogicError, ValueError):
    pass


class DegeneratePrior(ISLogicError, ValueError):
    pass


class MissingPayoff(ISLogicError, ValueError):
    pass


class PriorMismatch(ISLogicError, ValueError):
    exit_code = 3


class ArityError(ISLogicError, ValueError):
    """Shape or label disagreement between objects that must line up."""

    exit_code = 4


class DimensionMismatch(ArityError):
    pass


class ObservationSpaceMismatch(ArityError):
    pass


class LabelMismatch(ArityError):
    pass


class NotBinary(ArityError):
    pass


class GuaranteeViolation(ISLogicError):
    exit_code = 5
