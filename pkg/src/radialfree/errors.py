"""Exception hierarchy shared by every module."""


class RadialFreeError(Exception):
    """Base class for all library errors."""


class DomainError(RadialFreeError, ValueError):
    """An argument lies outside the domain of an operation."""


class ResourceError(RadialFreeError):
    """An enumeration would exceed the configured cap."""

    def __init__(self, message, size=None):
        super().__init__(message)
        self.size = size


class NumericError(RadialFreeError, ArithmeticError):
    """Non-finite values or a failed iterative solve."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index
