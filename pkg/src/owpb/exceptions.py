"""Exception types raised by owpb."""


class PatternError(ValueError):
    """Invalid pattern document or pattern object.

    ``field`` names the offending document field (``"edges"``, ``"angles"``...)
    so that callers such as the CLI can report it.
    """

    def __init__(self, message, field=None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field


class CapExceededError(MemoryError):
    """Requested dense object is larger than the configured memory cap."""


class PreconditionError(ValueError):
    """An operation was called outside of its domain (e.g. fast path with connected auxiliaries)."""
