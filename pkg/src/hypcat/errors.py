"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside the mathematical domain of an operation.

    Raised e.g. for points on the wrong side of the reference plane, for
    lightlike or timelike curve velocities, and for chart coordinates
    outside the overflow-safe range.
    """
