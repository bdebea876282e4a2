"""Exception hierarchy shared by every module of the package."""


class SymNormError(Exception):
    """Base class for all errors raised by symnorm."""


class NonHermitianInput(SymNormError, ValueError):
    pass


class NoConvergence(SymNormError, ArithmeticError):
    pass


class NotPSD(SymNormError, ValueError):
    pass


class DimensionMismatch(SymNormError, ValueError):
    pass


class IndexOutOfRange(SymNormError, IndexError):
    pass


class HypothesisNotMet(SymNormError, ValueError):
    """The input does not satisfy the hypothesis a check was asked to certify."""


class SignViolation(SymNormError, ValueError):
    pass


class BlocksDoNotCommute(SymNormError, ValueError):
    pass


class ParseError(SymNormError, ValueError):
    pass


class DimensionError(ParseError):
    pass


class NonHermitianBlock(ParseError):
    pass
