"""Exception types shared across the package."""
from __future__ import annotations


class QRulesError(Exception):
    """Base class for every error raised by this package."""


class NonZeroRemainder(QRulesError, ArithmeticError):
    pass


class DivisionByZero(QRulesError, ZeroDivisionError):
    pass


class ExprSyntaxError(QRulesError, ValueError):
    """Malformed expression text.

    ``offset`` is the byte offset (UTF-8) of the offending token and
    ``expected`` the set of tokens that would have been accepted there.
    """

    def __init__(self, message: str, offset: int, expected: frozenset[str] = frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f"{message} at byte {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(detail)


class NegativeExponentError(ExprSyntaxError):
    """A literal negative exponent such as ``q^-1``."""


class UnboundVariable(QRulesError, LookupError):
    pass


class NegativeIndex(QRulesError, ValueError):
    pass


class PreconditionViolated(QRulesError, ValueError):
    pass


class ZeroConstant(PreconditionViolated):
    pass


class InitialMismatch(PreconditionViolated):
    pass
