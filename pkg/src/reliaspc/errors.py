class ReliaSpcError(Exception):
    """Base class for every error raised by this package."""


class DataError(ReliaSpcError, ValueError):
    """Invalid failure data: bad tokens, non-positive gaps, non-increasing times.

    ``index`` is the 0-based position of the offending value and ``line`` the
    1-based input line, when known.
    """

    def __init__(self, message, index=None, line=None):
        super().__init__(message)
        self.index = index
        self.line = line


class InsufficientDataError(DataError):
    """Too few failures for the requested computation."""


class DomainError(ReliaSpcError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class SingularMatrixError(DomainError):
    pass


class EstimationError(ReliaSpcError):
    """Parameter estimation could not produce finite estimates."""


class NoFiniteMLEError(EstimationError):
    pass


class ConvergenceError(EstimationError):
    def __init__(self, message, bracket=None, iterations=None):
        super().__init__(message)
        self.bracket = bracket
        self.iterations = iterations


class LinearizationRangeError(EstimationError):
    pass
