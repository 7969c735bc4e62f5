"""Exception types shared across the package."""


class DomainError(ValueError):
    """A parameter lies outside the region where a formula is defined."""


class SeriesOrderError(ValueError):
    """Binary series operation on operands of different truncation order."""


class NotInvertibleError(ZeroDivisionError):
    """Series with zero constant term cannot be inverted."""


class ResourceLimitError(RuntimeError):
    """A configured size cap would be exceeded."""


class UnsupportedError(NotImplementedError):
    """Requested feature is outside what this build handles (e.g. GF(p^k) arithmetic)."""


class ConsistencyError(AssertionError):
    """Two routes to the same quantity disagreed; indicates a bug."""
