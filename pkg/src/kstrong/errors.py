"""Exception types raised across the package."""


class KStrongError(Exception):
    """Base class for all errors raised by this package."""


class InvalidPLS(KStrongError, ValueError):
    """Triples do not form a partial Latin square."""


class ContainmentViolated(KStrongError, ValueError):
    pass


class NotASubset(KStrongError, ValueError):
    pass


class IdenticalSquares(KStrongError, ValueError):
    pass


class InvalidBitrade(KStrongError, ValueError):
    pass


class OddOrder(KStrongError, ValueError):
    pass


class OrderTooLarge(KStrongError, ValueError):
    pass


class OrderTooSmall(KStrongError, ValueError):
    pass


class IndexRange(KStrongError, ValueError):
    pass


class KRange(KStrongError, ValueError):
    pass


class ParameterRange(KStrongError, ValueError):
    pass


class NotGood(KStrongError, ValueError):
    """Tessellation fails validation (overlap, coverage or goodness)."""


class RightAngleCoverageViolated(KStrongError, ValueError):
    pass


class NotInP(KStrongError, ValueError):
    pass


class NotInQ(KStrongError, ValueError):
    pass


class NotKStrong(KStrongError, ValueError):
    pass


class BudgetExceeded(KStrongError, RuntimeError):
    """Search stopped early; ``lower`` and ``upper`` hold the best bounds."""

    def __init__(self, message, lower=None, upper=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class ParseError(KStrongError, ValueError):
    pass
