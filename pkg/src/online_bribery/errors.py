"""Exception types shared across the package."""


class BriberyError(Exception):
    """Base class for all package errors."""


class ValidationError(BriberyError, ValueError):
    """A malformed ballot, instance, or family spec.

    ``path`` names the offending field (e.g. ``current.ballot`` or
    ``past[1].price``) so CLI users can find it in the input file.
    """

    def __init__(self, path, message):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)


class ResourceCapError(BriberyError):
    """An explicit size cap was exceeded (oracle, DP table, enumeration)."""


class NotApplicableError(BriberyError):
    """A dedicated solver was asked to handle an instance outside its scope."""
