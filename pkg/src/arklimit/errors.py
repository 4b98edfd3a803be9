"""Exception hierarchy with stable machine-readable codes.

Every error that can cross the service/CLI boundary carries a ``code``
string that is part of the response schema and must stay stable.
"""

from __future__ import annotations


class ArkLimitError(Exception):
    """Base class for all domain errors."""

    code = "INTERNAL_ERROR"


class EmptyInputError(ArkLimitError):
    code = "EMPTY_INPUT"


class InvalidParameterError(ArkLimitError):
    code = "INVALID_PARAMETER"


class NonStationaryError(ArkLimitError):
    """Some characteristic root has modulus >= 1 (minus the requested margin)."""

    code = "NON_STATIONARY"


class ClusteredRootsError(ArkLimitError):
    """Roots too close for the residue formula; use the confluent path."""

    code = "CLUSTERED_ROOTS"


class NoConvergenceError(ArkLimitError):
    code = "NO_CONVERGENCE"


class OutsideAnnulusError(ArkLimitError):
    """Generating-function argument outside the annulus of convergence."""

    code = "OUTSIDE_ANNULUS"


class BudgetExceededError(ArkLimitError):
    """Requested brute-force enumeration exceeds the index budget."""

    code = "BUDGET_EXCEEDED"


class LagTooLargeError(ArkLimitError):
    code = "LAG_TOO_LARGE"


class LengthMismatchError(ArkLimitError):
    code = "LENGTH_MISMATCH"


class RealnessViolationError(ArkLimitError):
    """Conjugate-closed input produced a value with a non-negligible
    imaginary part; signals an internal numerical failure."""

    code = "REALNESS_VIOLATION"
