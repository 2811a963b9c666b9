from __future__ import annotations

from typing import Any

__all__ = (
    "FracbernException",
    "DomainError",
    "ConfigError",
    "AccuracyError",
    "BracketError",
)


class FracbernException(Exception):
    """Base exception class for all fracbern exceptions."""


class DomainError(FracbernException, ValueError):
    """Raised when an argument lies outside the domain of an operation."""


class ConfigError(DomainError):
    """Raised when a config file or a run configuration is invalid."""


class AccuracyError(FracbernException):
    """Raised when a requested tolerance could not be met.

    The best value found so far is kept on the exception, so callers can decide whether
    the result is still usable or whether the tolerances should be retuned.

    Parameters
    ----------
    message:
        The error message.
    value:
        The best value that was computed before giving up.
    estimate:
        The error estimate (or tail bound) that belongs to ``value``.
    partial:
        A partial structured result, e.g. a truncated :class:`.NeumannSolution`.
    """

    def __init__(
        self,
        message: str,
        *,
        value: float | None = None,
        estimate: float | None = None,
        partial: Any = None,
    ):
        super().__init__(message)
        self.value = value
        self.estimate = estimate
        self.partial = partial


class BracketError(AccuracyError):
    """Raised when a root or a minimum could not be bracketed."""
