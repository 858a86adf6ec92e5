"""Exception hierarchy shared across the package."""


class CurveOptError(Exception):
    """Base class for all curveopt errors."""


class DimensionError(CurveOptError):
    """A point does not match the problem dimension."""


class DomainError(CurveOptError):
    """An argument lies outside its mathematical domain."""


class EvaluationFailure(CurveOptError):
    """Objective or gradient produced a non-finite value."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class NotDescent(CurveOptError):
    """The search was started with a nonnegative initial slope."""


class SearchStalled(CurveOptError):
    """Backtracking exhausted its trial budget without acceptance."""

    def __init__(self, message, best_t=None, best_f=None):
        super().__init__(message)
        self.best_t = best_t
        self.best_f = best_f


class UsageError(CurveOptError):
    """An operation was called in a state it does not support."""


class ConfigError(CurveOptError):
    """Invalid configuration value or unknown problem/solver key."""


class IoError(CurveOptError):
    """Reading or writing a results file failed."""


class ParseError(CurveOptError):
    """A results file is malformed."""

    def __init__(self, message, line_no=None):
        super().__init__(message)
        self.line_no = line_no
