"""Exception and warning types shared across the package.

The split mirrors how failures surface at the command line: usage and
parse problems are the caller's fault, domain errors mean the input is
well formed but mathematically inadmissible (degenerate section, angle
out of range), solver errors mean a numerical routine gave up, and
accuracy problems mean a result was produced but should not be trusted
at the requested resolution.
"""


class ConeBoundsError(Exception):
    """Base class for all package errors."""


class UsageError(ConeBoundsError):
    """Malformed input: bad schema, unknown kind or quantity, bad flag."""


class DomainError(ConeBoundsError):
    """Input is parseable but outside the mathematical domain."""


class GeometryError(DomainError):
    """Degenerate or invalid plane section."""


class SolverError(ConeBoundsError):
    """A numerical solve failed to converge or lost its bracket."""


class AccuracyError(ConeBoundsError):
    """A computed value failed its own accuracy check."""


class AccuracyWarning(UserWarning):
    """Result produced, but the grid or box is too coarse to trust it fully."""
