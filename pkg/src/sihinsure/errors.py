"""Exception hierarchy.

Every error raised by the package derives from :class:`SihError`, and each
subclass carries the process exit code the CLI reports for it.
"""

from __future__ import annotations


class SihError(Exception):
    exit_code = 1


class ParseError(SihError):
    """Malformed configuration text."""

    exit_code = 2

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(SihError, ValueError):
    """A parameter or state violates its domain invariants."""

    exit_code = 3


class InvalidPerturbation(ValidationError):
    pass


class NumericalError(SihError):
    exit_code = 4


class NegativeStateProduced(NumericalError):
    """A time step drove S, I or H below zero."""

    def __init__(self, message: str, step: int | None = None):
        self.step = step
        super().__init__(message)


class InternalInconsistency(NumericalError):
    """Two independent derivations of the same quantity disagree."""


class GridMismatch(NumericalError, ValueError):
    """Trajectory grid does not fit the policy horizon and step size."""


class DegenerateBase(NumericalError):
    """Premium base is zero, so the premium is undefined."""


class ZeroBaseline(NumericalError):
    """Baseline quantity is zero, so a relative sensitivity is undefined."""
