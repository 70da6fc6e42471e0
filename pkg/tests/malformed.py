"""Malformed expressions with the UTF-8 byte offset each error must report."""
from qrules.errors import ExprSyntaxError, NegativeExponentError

CASES = [
    ("q^^m", 2, ExprSyntaxError),
    ("q^-1", 2, NegativeExponentError),
    ("[n]^-2", 4, NegativeExponentError),
    ("[m", 2, ExprSyntaxError),
    ("2q", 1, ExprSyntaxError),
    ("x + 1", 0, ExprSyntaxError),
    ("(q - 1", 6, ExprSyntaxError),
    ("q + ", 4, ExprSyntaxError),
    ("", 0, ExprSyntaxError),
    ("[m+]", 3, ExprSyntaxError),
    ("[2*]", 3, ExprSyntaxError),
    ("q^(m+1", 6, ExprSyntaxError),
    ("1/0", 2, ExprSyntaxError),
    ("q * * q", 4, ExprSyntaxError),
    ("q^m)", 3, ExprSyntaxError),
    ("[m]^n", 4, ExprSyntaxError),
    ("q + $", 4, ExprSyntaxError),
    # non-ASCII before the fault: offsets count bytes, not characters
    ("q\u00a0^^m", 4, ExprSyntaxError),
    ("q^(m\u00a0+\u00a01))", 11, ExprSyntaxError),
    ("[m] * \u00e9", 6, ExprSyntaxError),
    ("\u00e9\u00e9 + q^^m", 0, ExprSyntaxError),
]
