"""Exception hierarchy for quasizeros.

Every failure mode raised by the library derives from QuasiZeroError so
callers (and the CLI) can map errors to outcomes uniformly.  Validation
problems derive from DomainError, numerical failures from NumericalError.
"""


class QuasiZeroError(Exception):
    """Base class for all quasizeros errors."""


class DomainError(QuasiZeroError, ValueError):
    """Invalid argument or parameter (caller error)."""


class InvalidIndexError(DomainError):
    """Branch index outside the indexed family (nu = 0, empty range, ...)."""


class OverflowRangeError(DomainError):
    """Direct evaluation would overflow; use the scaled form instead."""


class PreconditionHError(DomainError):
    """Strip half-width h below the admissible threshold for the bound."""


class DeltaTooLargeError(DomainError):
    """Exclusion radius delta is not below the separation radius."""


class NumericalError(QuasiZeroError):
    """A computation failed to converge or could not be completed."""


class DerivativeVanishesError(NumericalError):
    """Newton step undefined: |f'| below the vanishing threshold."""


class NotConvergedError(NumericalError):
    """Fixed-point iteration did not reach tolerance in the iteration budget."""


class MaxIterationsError(NumericalError):
    """Newton refinement did not reach tolerance in the iteration budget."""


class EscapedBasinError(NumericalError):
    """Newton iterate moved too far from its seed to trust the index."""


class DuplicateZeroError(NumericalError):
    """Two refined values collapsed onto the same zero."""


class TooFewRecordsError(DomainError):
    """An operation requiring at least two records got fewer."""


class ZeroOnContourError(NumericalError):
    """A contour passes too close to a zero for reliable quadrature."""


class QuadratureStalledError(NumericalError):
    """Adaptive contour quadrature exhausted its segment budget."""


class SubdivisionStalledError(NumericalError):
    """Recursive zero search exhausted its retry or depth budget."""


class RecordOutsideContourError(DomainError):
    """A record handed to a completeness check lies outside the contour."""


class NoSolutionError(NumericalError):
    """Scalar root-finding found no admissible root (internal failure)."""


class EmptyRegionSampleError(NumericalError):
    """Rejection sampling failed too many consecutive times."""


class OutsideStripError(NumericalError):
    """A quadrangle ordinate line does not meet both level curves beyond R."""


class IncompleteZeroListError(QuasiZeroError):
    """The supplied zero list does not cover the sampled window."""
