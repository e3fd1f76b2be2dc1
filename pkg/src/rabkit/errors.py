"""Exception types shared across the toolkit."""


class RabkitError(Exception):
    """Base class for all toolkit errors."""


class InputError(RabkitError, ValueError):
    """Malformed input: bad indices, bad graph spec, mismatched graphs."""


class DomainError(RabkitError, ValueError):
    """An operation was called outside its precondition."""


class ValidationError(RabkitError):
    """A structure failed one of its defining conditions.

    ``condition`` names the failing condition and ``witness`` holds the
    offending data so reports can show it.
    """

    def __init__(self, condition: str, witness=None, message: str | None = None):
        self.condition = condition
        self.witness = witness
        super().__init__(message or f"condition {condition} failed: {witness!r}")


class InternalError(RabkitError, RuntimeError):
    """A consistency check that should never fail did fail."""
