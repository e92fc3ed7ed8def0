"""Exception types shared across modules."""


class BudgetExceeded(RuntimeError):
    """A configured size or time budget would be exceeded."""


class NotMinimalError(ValueError):
    """Generators passed where a minimal generating set is required."""
