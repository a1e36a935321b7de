"""Exception hierarchy shared by every module."""


class GinvError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(GinvError, ValueError):
    pass


class NotSquare(DimensionMismatch):
    pass


class Singular(GinvError, ZeroDivisionError):
    pass


class NonCoprimeModuli(GinvError, ValueError):
    pass


class NotIdempotent(GinvError, ValueError):
    pass


class NotHirano(GinvError, ValueError):
    """``a - a^3`` is not nilpotent."""


class HypothesisViolated(GinvError, ValueError):
    def __init__(self, equation: str, residual=None):
        super().__init__(f"hypothesis violated: {equation}")
        self.equation = equation
        self.residual = residual


class VerificationFailure(GinvError):
    """Two independent computations that must agree did not."""


class InternalVerificationFailure(GinvError):
    """A freshly computed certificate failed its own axiom checks.

    This always indicates a bug; results are never returned unverified.
    """

    def __init__(self, what: str, failed):
        failed = list(failed)
        super().__init__(f"{what}: failed checks {', '.join(failed)}")
        self.failed = failed


class UnknownTheorem(GinvError, KeyError):
    def __str__(self):
        return f"unknown theorem id {self.args[0]!r}"


class MissingInput(GinvError, KeyError):
    def __str__(self):
        return str(self.args[0])


class GenerationExhausted(GinvError):
    pass


class MatrixParseError(GinvError, ValueError):
    pass
