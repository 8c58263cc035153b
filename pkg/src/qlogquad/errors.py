"""Exception types shared across the package."""


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""
