"""Shared exception types."""


class BudgetError(RuntimeError):
    """Raised when an enumeration would exceed its configured budget/cap."""


class RefusalError(ValueError):
    """Raised when a closed-form routine is asked for inputs outside the
    regime where its answer is certified (callers may force-evaluate where
    a brute-force fallback exists)."""
