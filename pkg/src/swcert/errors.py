"""Exception hierarchy shared by all swcert modules."""


class SWCertError(Exception):
    """Base class for every error raised by swcert."""


class InvalidInputError(SWCertError, ValueError):
    pass


class DomainError(SWCertError, ValueError):
    """An argument lies outside the domain of a function."""


class InvalidCurveError(SWCertError, ValueError):
    pass


class NotStrictlyConvexError(InvalidCurveError):
    pass


class NoInnerLoopError(SWCertError, ValueError):
    pass


class DivergentIntegralError(SWCertError, ArithmeticError):
    pass


class UnreachableHeightError(SWCertError, ValueError):
    pass


class NotUmbilicError(SWCertError, ValueError):
    pass


class NotEllipticError(SWCertError, ValueError):
    pass


class NotCMCTypeError(SWCertError, ValueError):
    pass


class MissingHypothesisError(SWCertError, ValueError):
    pass


class PreconditionError(SWCertError, ValueError):
    pass


class UndefinedRdError(PreconditionError):
    pass


class ExprSyntaxError(SWCertError, ValueError):
    """Parse failure; ``offset`` is the byte offset of the offending token."""

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownIdentifierError(ExprSyntaxError):
    pass


class EvaluationError(SWCertError, ArithmeticError):
    pass
