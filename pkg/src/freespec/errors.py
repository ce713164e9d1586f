"""Exception types shared across the package."""


class FreespecError(Exception):
    """Base class for all package errors."""


class InputError(FreespecError, ValueError):
    """Malformed or out-of-range input."""


class ResourceCapError(FreespecError):
    """A requested size exceeds a configured enumeration cap."""


class SingularMatrixError(FreespecError, ArithmeticError):
    """Exact elimination met a matrix with no inverse."""


class VerificationError(FreespecError):
    """A verification suite found a mismatch."""
