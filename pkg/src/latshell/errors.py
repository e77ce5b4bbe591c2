"""Exception hierarchy. Every error raised on purpose derives from LatshellError."""


class LatshellError(Exception):
    pass


class InvalidArgument(LatshellError, ValueError):
    pass


class TooLargeError(LatshellError):
    """Raised by brute-force counters when the enumeration exceeds the feasibility guard."""


class NumericalDomainError(LatshellError, ArithmeticError):
    pass


class LevelSetEmptyError(LatshellError):
    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class UnsupportedPhaseError(LatshellError):
    pass
