class GPError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(GPError, ValueError):
    pass


class NotConvertible(GPError, ValueError):
    pass


class DualInfeasible(GPError):
    """The dual constraints admit no non-negative solution.

    ``min_component`` holds the Phase-I certificate: the largest achievable
    minimum dual component (negative, or ``None`` when the equality system
    itself is inconsistent).
    """

    def __init__(self, message, min_component=None, residual=None):
        super().__init__(message)
        self.min_component = min_component
        self.residual = residual


class Unbounded(GPError):
    pass


class MaxIterationsReached(GPError):
    pass


class RecoveryImpossible(GPError):
    pass


class InconsistentCertificate(GPError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ParseError(GPError, ValueError):
    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column
