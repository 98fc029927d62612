"""Shared exception types."""


class InputError(ValueError):
    """Raised when an operation receives structurally invalid input."""


class BudgetError(RuntimeError):
    """Raised when a dense-tensor computation would exceed the size budget."""
