"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside the range where a construction is defined.

    Messages name the violated condition, e.g. ``"requires a > 2m+2"``.
    """


class InternalError(RuntimeError):
    """An internal consistency check failed (a bug, not bad input)."""
