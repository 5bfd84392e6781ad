"""Typed exceptions shared across the library."""


class FuchslabError(Exception):
    """Base class for all library errors."""


class GroupSyntaxError(FuchslabError, ValueError):
    """A group-spec string does not match the grammar."""


class InfiniteGroupError(FuchslabError):
    """An operation that needs element enumeration was given an infinite group."""


class BudgetExceededError(FuchslabError):
    """An enumeration would exceed the configured desk-scale budget."""


class ZeroRingError(FuchslabError):
    """A quotient would collapse to the zero ring (1 lies in the ideal)."""


class UnitGroupMismatchError(FuchslabError):
    """A ring's unit group is not exactly the image of the presenting group."""


class OrderMismatchError(FuchslabError, ValueError):
    """A generator image has an incompatible order."""


class NotRealizableError(FuchslabError):
    """A witness ring was requested for a group that has none."""
