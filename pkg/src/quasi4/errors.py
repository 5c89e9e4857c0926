"""Exception types shared across the package."""


class GraphInputError(ValueError):
    """Malformed graph input (bad edge list, parse error, bad generator params)."""


class PreconditionError(ValueError):
    """An operation was called outside its contract; the message names the failed check."""


class SizeCapExceeded(PreconditionError):
    """Oracle-scale operation invoked on a graph above the size cap."""

    def __init__(self, what, n, cap):
        super().__init__(f"{what}: graph has {n} vertices, oracle cap is {cap}")
        self.n = n
        self.cap = cap


class InvariantViolation(RuntimeError):
    """A fact the theory guarantees failed to hold; the message names it."""
