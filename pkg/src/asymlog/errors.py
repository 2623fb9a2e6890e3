"""Exception types shared across the package."""


class AsymlogError(Exception):
    """Base class for computation errors (CLI exit code 1)."""


class DomainError(AsymlogError, ValueError):
    pass


class RangeError(AsymlogError, ValueError):
    pass


class UnsupportedOrder(AsymlogError, ValueError):
    pass


class OrderTooHigh(UnsupportedOrder):
    pass


class MatchFailure(AsymlogError):
    pass


class NoConvergence(AsymlogError):
    pass


class DegenerateFit(AsymlogError, ValueError):
    pass


class UnknownFigure(AsymlogError, ValueError):
    pass
