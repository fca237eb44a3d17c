"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the domain of an operation."""


class InconsistencyError(RuntimeError):
    """Two independent computations that must agree did not."""


class NonTerminationError(RuntimeError):
    """An iteration expected to stop did not do so within its cap."""
