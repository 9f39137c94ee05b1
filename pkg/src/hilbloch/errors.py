"""Exception types shared across the package."""


class HilblochError(Exception):
    """Base class for all package-specific errors."""


class DomainError(HilblochError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class PreconditionError(HilblochError, ValueError):
    """A documented precondition of an operation is violated."""


class ConstructionError(HilblochError, ValueError):
    """An object cannot be built from the given data (bad grid, infinite mass, unsolvable root)."""


class NumericsError(HilblochError, ArithmeticError):
    """A numerical routine failed to converge or detected divergence."""
