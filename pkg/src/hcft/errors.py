"""Exception types raised across the package."""


class HCFTError(Exception):
    """Base class for all package errors."""


class DimensionError(HCFTError, ValueError):
    """Operands live over different numbers of odd generators."""


class DegenerateFormError(HCFTError, ValueError):
    pass


class SingularPointError(HCFTError, ValueError):
    """Raised for evaluation at zeta = 0 where (-2 zeta)^(-[n]) blows up."""


class DivergenceError(HCFTError, ArithmeticError):
    """An integral over R does not converge for the given data."""


class OrderError(HCFTError, ValueError):
    """Requested derivative order exceeds what a backend supports."""


class GridMismatchError(HCFTError, ValueError):
    pass


class FormatError(HCFTError, ValueError):
    """Malformed JSON input; the message names the offending location."""
