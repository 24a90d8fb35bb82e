"""Exception types raised across the package."""


class RankOneError(Exception):
    """Base class for all package errors."""


class ParseError(RankOneError, ValueError):
    pass


class DegreeMismatch(RankOneError, ValueError):
    pass


class OrderBoundExceeded(RankOneError):
    pass


class NotASubgroup(RankOneError, ValueError):
    pass


class NotNormal(RankOneError, ValueError):
    pass


class UnknownBuiltin(RankOneError, KeyError):
    pass


class FamilyNotClosed(RankOneError, ValueError):
    pass


class NonIntegralInnerProduct(RankOneError, ValueError):
    """An inner product came out fractional, so the class function is not a character."""


class RankMismatch(RankOneError, ValueError):
    pass


class FusionViolation(RankOneError, ValueError):
    pass


class MaximalNotUnique(RankOneError):
    pass


class RankTooLarge(RankOneError, ValueError):
    pass


class Infeasible(RankOneError):
    pass


class InvalidComplex(RankOneError, ValueError):
    """Chain-complex data that does not define a complex of free modules."""


class BoundaryNotSquareZero(InvalidComplex):
    pass


class NotSubconjugate(RankOneError, ValueError):
    pass


class NotInjective(RankOneError, ValueError):
    pass
