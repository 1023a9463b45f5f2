"""Exception hierarchy shared by all planex modules."""

from __future__ import annotations


class PlanexError(Exception):
    """Base class for every error raised by planex."""


class InvalidParameter(PlanexError, ValueError):
    """A parameter violates an operation's documented precondition."""


class CapacityError(PlanexError, ValueError):
    """A graph would exceed the supported vertex capacity."""


class PreconditionError(PlanexError, ValueError):
    """An input graph does not satisfy a structural precondition."""


class GraphFormatError(PlanexError, ValueError):
    """Malformed graph6 input.

    Attributes:
        offset: zero-based byte offset of the offending character.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class SpectralConvergenceError(PlanexError, RuntimeError):
    """Power iteration did not reach the requested tolerance."""


class ConstructionError(PlanexError, RuntimeError):
    """A builder produced a graph that fails its own self-checks."""


class SearchCapExceeded(PlanexError, RuntimeError):
    """An enumeration or search exceeded its configured size cap."""
