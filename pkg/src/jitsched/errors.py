"""Exception taxonomy and checked 64-bit integer arithmetic.

All quantities in this package (deadlines, durations, weights, totals)
live in the signed 64-bit range.  Python integers do not wrap, so the
helpers here make range violations loud instead of silent.
"""
from __future__ import annotations

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


class SchedulingError(Exception):
    """Base class for every error raised by this package."""


class UsageError(SchedulingError, ValueError):
    """A caller broke an operation's contract (bad argument, domain mismatch)."""


class WitnessError(SchedulingError, ValueError):
    """A supplied witness (clique, truth assignment) does not certify what it must."""


class WeightOverflowError(SchedulingError, OverflowError):
    """An integer left the signed 64-bit range."""


class BudgetExceededError(SchedulingError):
    """A solver or generator refused to exceed its explicit work budget."""

    def __init__(self, message: str, *, budget: int, required: int | None = None):
        super().__init__(message)
        self.budget = budget
        self.required = required


class ParseError(SchedulingError, ValueError):
    """A document is syntactically malformed; message carries position context."""


class ValidationError(SchedulingError, ValueError):
    """A document or formula is well-formed but semantically invalid."""


def checked_int64(value: int, context: str = "value") -> int:
    """Return value unchanged, raising WeightOverflowError outside int64 range."""
    if not (INT64_MIN <= value <= INT64_MAX):
        raise WeightOverflowError(
            f"{context} {value} is outside the signed 64-bit range"
        )
    return value


def checked_add(a: int, b: int, context: str = "sum") -> int:
    return checked_int64(a + b, context)


def checked_mul(a: int, b: int, context: str = "product") -> int:
    return checked_int64(a * b, context)


def checked_sum(values, context: str = "sum") -> int:
    total = 0
    for v in values:
        total = checked_add(total, v, context)
    return total
