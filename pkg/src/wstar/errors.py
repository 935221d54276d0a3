"""Exception types raised by :mod:`wstar`."""


class WStarError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(WStarError, ValueError):
    pass


class NonFiniteEntry(WStarError, ValueError):
    pass


class ShapeMismatch(WStarError, ValueError):
    pass


class NotHermitian(WStarError, ValueError):
    pass


class NumericalFailure(WStarError, ArithmeticError):
    pass


class PreconditionViolated(WStarError, ValueError):
    pass


class InvalidNorm(WStarError, ValueError):
    pass


class CNotInMedianInterval(WStarError, ValueError):
    pass


class BlockTooLarge(WStarError, ValueError):
    pass


class CertificateImpossible(WStarError, RuntimeError):
    """Raised if no P0 certificate exists. Never fires on valid finite input."""


class PairingInfeasible(WStarError):
    """Some coordinates have no admissible partner.

    Attributes
    ----------
    failed : tuple of int
        Indices (0-based, into the input list) left unpaired.
    result : PairingResult
        The partial pairing; ``result.unitary`` fixes the failed coordinates.
    """

    def __init__(self, message, failed, result=None):
        super().__init__(message)
        self.failed = tuple(failed)
        self.result = result
