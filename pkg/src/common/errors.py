"""
Exception hierarchy.

Every failure raised by the library derives from CrossminError. The CLI maps
UsageError to exit code 1 and DataError to exit code 2; anything that
describes bad input also derives from ValueError so plain callers can catch
it the usual way.
"""


class CrossminError(Exception):
    """Base class for all library errors."""


class UsageError(CrossminError, ValueError):
    """Invalid invocation or parameter combination."""


class ConfigError(UsageError):
    """Invalid algorithm configuration (MoveConfig, StressParams, ...)."""


class DataError(CrossminError, ValueError):
    """Input data could not be used."""


class GraphFormatError(DataError):
    """Malformed graph file."""


class DrawingFormatError(DataError):
    """Malformed drawing file or position count mismatch."""


class EmptyGraphError(DataError):
    """Preprocessing consumed every vertex (the input was a forest)."""


class DisconnectedGraphError(DataError):
    """An operation that needs a connected graph received a disconnected one."""


class NotWellBehavedError(DataError):
    """Drawing fails the epsilon-well-behavedness check at a vertex."""

    def __init__(self, message: str, diagnostics: dict):
        super().__init__(message)
        self.diagnostics = diagnostics


class GeometryError(CrossminError, ValueError):
    """Invalid geometric input (non-finite coordinate, zero-length segment)."""


class DegenerateGeometryError(GeometryError):
    """Input violates a general-position requirement."""


class ArrangementError(CrossminError):
    """The bloated dual could not be built or evaluated."""


class DegenerateArrangementError(ArrangementError):
    """Unresolvable degeneracy while building the dual."""


class ArrangementConsistencyError(ArrangementError):
    """Face counts disagree along two dual paths or become negative."""
