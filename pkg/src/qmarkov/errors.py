"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Invalid input: bad probabilities, non-unitary gates, malformed files."""


class CapacityError(RuntimeError):
    """A register would exceed the configured qubit capacity."""
