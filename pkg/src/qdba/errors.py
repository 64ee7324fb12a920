"""Exception types shared across the simulator."""


class InvalidParameterError(ValueError):
    """A parameter violates a protocol precondition (e.g. fewer than 3 generals)."""


class DegenerateRunError(RuntimeError):
    """A run cannot proceed because no distributed copy supports the required order.

    Degenerate runs are recorded and reported separately; they never count as
    protocol successes.
    """


class IndexPoolExhaustedError(RuntimeError):
    """A sender has no remaining index supporting its claimed order."""
