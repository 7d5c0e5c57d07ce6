"""Exception hierarchy shared by every module in the package."""


class QuotModelError(ValueError):
    """Base class for all errors raised by quotmodel."""


class FieldMismatch(QuotModelError):
    pass


class SingularGauge(QuotModelError):
    pass


class NotStable(QuotModelError):
    pass


class NotCommuting(QuotModelError):
    pass


class NotOnVariety(QuotModelError):
    pass


class DimensionMismatch(QuotModelError):
    pass


class WrongLoopCount(QuotModelError):
    pass


class DuplicateSupport(QuotModelError):
    pass


class ZeroRank(QuotModelError):
    pass


class ParameterOutOfRange(QuotModelError):
    pass


class BudgetExceeded(QuotModelError):
    pass


class NonIntegralOrbitCount(RuntimeError):
    """Raised when an orbit count fails to divide exactly; this is a bug, not bad input."""
