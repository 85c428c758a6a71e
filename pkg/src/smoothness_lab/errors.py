"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class SmoothnessLabError(Exception):
    """Base class for all package errors."""


class ParameterError(SmoothnessLabError, ValueError):
    """An argument is outside the domain of the operation."""


class AliasingError(SmoothnessLabError, ValueError):
    """A grid is too coarse to carry the requested spectrum."""


class ConfigurationError(SmoothnessLabError, ValueError):
    """A configuration entry is missing, unknown or invalid.

    Parameters
    ----------
    message : str
        Human readable diagnostic.
    key : str, optional
        Dotted name of the offending configuration key.
    """

    def __init__(self, message: str, key: str | None = None):
        self.key = key
        if key is not None:
            message = f"{key}: {message}"
        super().__init__(message)


class UnsupportedError(SmoothnessLabError, ValueError):
    """The operation is not defined for the requested exponent or mode."""


class SolverError(SmoothnessLabError, RuntimeError):
    """An iterative solver failed to meet its tolerances.

    The best iterate found so far is attached so callers can still report it.
    """

    def __init__(self, message: str, best=None, diagnostics=None):
        super().__init__(message)
        self.best = best
        self.diagnostics = diagnostics or {}
