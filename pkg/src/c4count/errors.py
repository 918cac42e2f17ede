"""Exception types shared across the package.

The CLI maps these to exit codes: InputError -> 4, ResourceLimitError -> 3,
verification/corpus failures -> 2.
"""


class InputError(ValueError):
    """Malformed user input (edge lists, weight files, certificates)."""


class ResourceLimitError(RuntimeError):
    """A computation would exceed its configured budget; never silently degraded."""


class PreconditionError(ValueError):
    """An operation's documented precondition does not hold for the given input."""
