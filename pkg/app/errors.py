"""Exceptions raised by the evaluation and verification layers."""

from __future__ import annotations


class LemniscateError(Exception):
    """Base class for all domain errors."""


class InvalidParameterError(LemniscateError, ValueError):
    """A parameter record violates one of its invariants."""


class PoleError(LemniscateError, ValueError):
    """Gamma (or a Pochhammer denominator) evaluated at a nonpositive integer."""


class EvaluationDomainError(LemniscateError, ValueError):
    """A point lies outside the supported evaluation disk."""


class ToleranceNotMetError(LemniscateError):
    """The ratio test could not certify the series tail within max_terms."""


class SeriesDomainError(LemniscateError, ValueError):
    """An operator was applied to a series outside its domain (e.g. a0 != 0)."""


class NearZeroDenominatorError(LemniscateError):
    """A functional's denominator vanished (numerically) at a sample point."""

    def __init__(self, z: complex, modulus: float) -> None:
        self.z = z
        self.modulus = modulus
        super().__init__(
            f"denominator modulus {modulus:.3e} below guard at z = {z!r}"
        )


class FamilyMismatchError(LemniscateError, TypeError):
    """Parameters of the wrong family were passed for a theorem or proof."""


class ConditionNotSatisfiedError(LemniscateError):
    """A scan was requested for parameters outside the theorem's condition."""


class PreconditionError(LemniscateError, ValueError):
    """A documented precondition of an operation is violated."""
