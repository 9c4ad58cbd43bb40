"""Exception types raised across the package."""


class SymformsError(Exception):
    """Base class for all errors raised by symforms."""


class ImaginaryPartTooSmall(SymformsError):
    pass


class DegeneratePoint(SymformsError):
    pass


class UnsupportedWeight(SymformsError):
    pass


class WeightMismatch(SymformsError):
    pass


class WeightTooSmall(SymformsError):
    pass


class WeightHypothesisViolated(SymformsError):
    pass


class DepthExceeded(SymformsError):
    pass


class RankMismatch(SymformsError):
    pass


class ResidualZDependence(SymformsError):
    """A quantity that should be free of the formal variable Z is not.

    ``residual`` holds the offending object when available.
    """

    def __init__(self, msg, residual=None):
        super().__init__(msg)
        self.residual = residual


class NotInImage(SymformsError):
    pass


class IndexOutOfRange(SymformsError):
    pass


class SingularMatrix(SymformsError):
    pass


class UnknownName(SymformsError):
    pass


class CacheCorrupt(SymformsError):
    pass


class AssertionFailure(SymformsError, AssertionError):
    """An exact identity failed; the message names the first mismatching coefficient."""
