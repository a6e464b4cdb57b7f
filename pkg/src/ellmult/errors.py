"""Exception hierarchy shared by every module."""


class EllmultError(Exception):
    """Base class for all package errors."""


class DomainError(EllmultError, ValueError):
    """An argument lies outside the domain of the operation."""


class PrecisionError(EllmultError, ArithmeticError):
    """The requested accuracy could not be reached.

    ``bound`` carries the truncation bound that was actually achieved.
    """

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class SingularParameterError(EllmultError, ArithmeticError):
    """A denominator theta value fell below the guard threshold.

    Callers that sample random parameters treat this as a signal to
    draw a fresh point, never as a verification failure.
    """


class BudgetError(EllmultError):
    """A brute-force enumeration would exceed its size budget."""


class SamplingError(EllmultError):
    """No admissible parameter point was found within the retry budget."""


class InconclusiveError(EllmultError):
    """Every sampled point was singular, so no verdict can be given."""


class ExpressionError(DomainError):
    """Malformed CLI expression; ``offset`` is a byte offset into the input.

    ``kind`` is ``"syntax"`` or ``"semantic"`` (a generator index out of range).
    """

    def __init__(self, message, offset: int, kind: str = "syntax"):
        super().__init__(f"{kind} error at offset {offset}: {message}")
        self.offset = offset
        self.kind = kind
