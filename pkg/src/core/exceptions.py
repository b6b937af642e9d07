"""
Error hierarchy shared by every module.

Not derived from ValueError: pydantic validators re-raise these classes
unwrapped.
"""

from typing import Optional

import src.core.constants as constants


class AdsError(Exception):
    """Base class for all toolkit errors."""

    exit_code: int = 1


# --- Data errors (exit code 2) ---


class DataError(AdsError):
    exit_code = constants.EXIT_DATA_ERROR


class DomainError(DataError):
    """An argument lies outside the domain of the operation."""


class InsufficientDataError(DataError):
    """Too few observations for the requested statistic."""


class UnderdeterminedError(DataError):
    """Fewer grid points than basis functions."""


class ConditioningError(DataError):
    """Least-squares design is numerically rank deficient."""


class WindowTooLargeError(DataError):
    """The MOSUM window leaves no valid scan position."""


class EmptyReductionError(DataError):
    """TRR selected zero dimensions, nothing to project on."""


class ParseError(DataError):
    """Malformed input file."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# --- Statistic errors ---


class DegenerateVarianceError(AdsError):
    """A variance estimate vanished (singular Q, zero denominator)."""

    exit_code = constants.EXIT_DEGENERATE


class NoSignalError(AdsError):
    """No change signal: the reduction selected q_hat = 0."""

    exit_code = constants.EXIT_NO_SIGNAL
