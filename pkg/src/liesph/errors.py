"""Shared exception types."""


class LiesphError(Exception):
    pass


class MismatchedSystems(LiesphError):
    """Roots or elements from different root systems were combined."""


class BudgetExceeded(LiesphError):
    """An enumeration was refused because the group/order is too large."""


class WordCapExceeded(LiesphError):
    """A reduced-word enumeration hit its cap before reaching an answer."""
