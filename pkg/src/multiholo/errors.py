"""Exceptions shared across the library."""


class MultiholoError(Exception):
    """Base class for library errors."""


class GroupConstructionError(MultiholoError):
    """Raised when Cayley data fails the group axioms."""


class GroupFileError(MultiholoError):
    """Raised when a group file cannot be parsed; message carries line/field context."""


class BudgetExceededError(MultiholoError):
    """An enumeration hit its configured step budget."""

    def __init__(self, message: str, steps: int | None = None):
        super().__init__(message)
        self.steps = steps


class CapExceededError(MultiholoError):
    """A structural size cap (automorphism count, holomorph order) was exceeded."""


class InternalConsistencyError(MultiholoError):
    """A mathematically guaranteed invariant failed; indicates a bug, never bad input."""
