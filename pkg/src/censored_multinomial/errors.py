"""Exception types shared across the toolkit.

Every error raised by the library derives from :class:`ToolkitError`, so
callers (notably the CLI) can separate domain failures from programming
errors. Exceptions that concern a specific category or bound carry a
1-based ``index`` attribute, matching the convention used by all external
JSON formats.
"""

from __future__ import annotations


class ToolkitError(Exception):
    """Base class for all library errors."""


class CapacityError(ToolkitError):
    """An enumeration would exceed the configured point cap."""

    def __init__(self, message: str, requested: int | None = None, cap: int | None = None):
        super().__init__(message)
        self.requested = requested
        self.cap = cap


class DimensionMismatch(ToolkitError):
    """Vector lengths or category counts do not agree."""


class InvalidBounds(ToolkitError):
    """Constraint bounds violate their invariants.

    ``index`` is the 1-based position of the offending bound, when one can
    be singled out.
    """

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class EmptyConstraint(ToolkitError):
    """An operation that needs a non-empty constraint set received an empty one."""


class FeasibilityError(ToolkitError):
    """Preconditions of an exchange-index search were violated."""


class ZeroLikelihood(ToolkitError):
    """The censored likelihood vanishes at the supplied parameter."""
