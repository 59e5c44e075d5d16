"""Exception classes shared across the kernel.

The CLI maps each class onto an exit code (domain 1, parse 2, resource 3).
"""


class TropkitError(Exception):
    """Base class for kernel errors."""


class DomainError(TropkitError, ValueError):
    """An operation was called outside its mathematical domain."""


class ParseError(TropkitError, ValueError):
    """Malformed textual or JSON input.

    ``position`` is the character offset of the offending token, when known.
    """

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ResourceError(TropkitError, RuntimeError):
    """A configured budget (enumeration size, shift retries) was exhausted."""
