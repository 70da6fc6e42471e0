"""Polynomial-valued sequence expressions over the index variables m, n, k.

Grammar (whitespace is insignificant)::

    expr      := term (('+' | '-') term)*
    term      := factor ('*' factor)*
    factor    := '-' factor | power
    power     := atom ('^' INT)?
    atom      := rational | 'q' ('^' qexp)? | '[' indexform ']' | '(' expr ')'
    qexp      := INT | VAR | '-' VAR | '(' indexform ')'
    indexform := ('+' | '-')? iterm (('+' | '-') iterm)*
    iterm     := INT ('*' VAR)? | VAR
    rational  := INT ('/' INT)?
    VAR       := 'm' | 'n' | 'k'

``^`` binds tighter than unary minus, so ``-q^2`` is ``-(q^2)``.  ``q^e`` with
an index form builds a :class:`QPow`; ``^`` on any other atom needs a literal
non-negative integer and builds an :class:`IntPow`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from .errors import ExprSyntaxError, NegativeExponentError, NegativeIndex, UnboundVariable
from .poly import Q as Q_POLY, Poly, q_integer, q_power

VARIABLES = ("m", "n", "k")


@dataclass(frozen=True)
class IndexForm:
    """Integer linear form ``c_m*m + c_n*n + c_k*k + constant``."""

    coeffs: tuple[tuple[str, int], ...] = ()
    constant: int = 0

    def __post_init__(self):
        merged = dict(self.coeffs)
        for name in merged:
            if name not in VARIABLES:
                raise ValueError(f"unknown index variable {name!r}")
        canon = tuple((v, merged[v]) for v in VARIABLES if merged.get(v))
        object.__setattr__(self, "coeffs", canon)

    @classmethod
    def of(cls, constant: int = 0, **coeffs: int) -> IndexForm:
        return cls(tuple(coeffs.items()), constant)

    @property
    def variables(self) -> frozenset[str]:
        return frozenset(v for v, _ in self.coeffs)

    def evaluate(self, binding: Mapping[str, int]) -> int:
        total = self.constant
        for v, c in self.coeffs:
            if v not in binding:
                raise UnboundVariable(f"index variable {v!r} is not bound")
            total += c * binding[v]
        return total

    def is_simple(self) -> bool:
        """True when the form prints without parentheses after ``q^``."""
        if not self.coeffs:
            return self.constant >= 0
        return self.constant == 0 and self.coeffs in ((("m", 1),), (("n", 1),), (("k", 1),))

    def __str__(self) -> str:
        out = ""
        for v, c in self.coeffs:
            if c == 1:
                term = v
            elif c == -1:
                term = "-" + v
            else:
                term = f"{c}*{v}"
            if out and not term.startswith("-"):
                out += "+"
            out += term
        if self.constant or not out:
            if out and self.constant > 0:
                out += "+"
            out += str(self.constant)
        return out


# -- AST ------------------------------------------------------------------


@dataclass(frozen=True)
class Constant:
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class QVar:
    """The bare variable ``q``."""


@dataclass(frozen=True)
class QPow:
    index: IndexForm


@dataclass(frozen=True)
class QInt:
    index: IndexForm


@dataclass(frozen=True)
class Add:
    left: "SeqExpr"
    right: "SeqExpr"


@dataclass(frozen=True)
class Sub:
    left: "SeqExpr"
    right: "SeqExpr"


@dataclass(frozen=True)
class Mul:
    left: "SeqExpr"
    right: "SeqExpr"


@dataclass(frozen=True)
class Neg:
    operand: "SeqExpr"


@dataclass(frozen=True)
class IntPow:
    base: "SeqExpr"
    exponent: int

    def __post_init__(self):
        if not isinstance(self.exponent, int) or self.exponent < 0:
            raise ValueError(f"IntPow exponent must be a non-negative int, got {self.exponent!r}")


SeqExpr = Union[Constant, QVar, QPow, QInt, Add, Sub, Mul, Neg, IntPow]

Q = QVar()


def variables(e: SeqExpr) -> frozenset[str]:
    if isinstance(e, (QPow, QInt)):
        return e.index.variables
    if isinstance(e, (Add, Sub, Mul)):
        return variables(e.left) | variables(e.right)
    if isinstance(e, Neg):
        return variables(e.operand)
    if isinstance(e, IntPow):
        return variables(e.base)
    return frozenset()


def normalize(e: SeqExpr) -> SeqExpr:
    """Fold ``Neg(Constant(c))`` into ``Constant(-c)``, bottom-up.

    This is the only rewriting :func:`parse` performs, so
    ``parse(render(e)) == normalize(e)`` for every well-formed tree.
    """
    if isinstance(e, Neg):
        inner = normalize(e.operand)
        if isinstance(inner, Constant):
            return Constant(-inner.value)
        return Neg(inner)
    if isinstance(e, (Add, Sub, Mul)):
        return type(e)(normalize(e.left), normalize(e.right))
    if isinstance(e, IntPow):
        return IntPow(normalize(e.base), e.exponent)
    return e


# -- evaluation -----------------------------------------------------------


def _index_value(form: IndexForm, binding: Mapping[str, int]) -> int:
    value = form.evaluate(binding)
    if value < 0:
        raise NegativeIndex(f"index form {form} evaluates to {value} under {dict(binding)}")
    return value


def evaluate(e: SeqExpr, binding: Mapping[str, int] | None = None) -> Poly:
    binding = binding or {}
    if isinstance(e, Constant):
        return Poly.const(e.value)
    if isinstance(e, QVar):
        return Q_POLY
    if isinstance(e, QPow):
        return q_power(_index_value(e.index, binding))
    if isinstance(e, QInt):
        return q_integer(_index_value(e.index, binding))
    if isinstance(e, Add):
        return evaluate(e.left, binding) + evaluate(e.right, binding)
    if isinstance(e, Sub):
        return evaluate(e.left, binding) - evaluate(e.right, binding)
    if isinstance(e, Mul):
        return evaluate(e.left, binding) * evaluate(e.right, binding)
    if isinstance(e, Neg):
        return -evaluate(e.operand, binding)
    if isinstance(e, IntPow):
        return evaluate(e.base, binding) ** e.exponent
    raise TypeError(f"not a SeqExpr node: {e!r}")


# -- rendering ------------------------------------------------------------


def _fmt_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render(e: SeqExpr) -> str:
    if isinstance(e, Constant):
        return _fmt_fraction(e.value)
    if isinstance(e, QVar):
        return "q"
    if isinstance(e, QPow):
        idx = str(e.index)
        return f"q^{idx}" if e.index.is_simple() else f"q^({idx})"
    if isinstance(e, QInt):
        return f"[{e.index}]"
    if isinstance(e, Add):
        return f"({render(e.left)} + {render(e.right)})"
    if isinstance(e, Sub):
        return f"({render(e.left)} - {render(e.right)})"
    if isinstance(e, Mul):
        right = render(e.right)
        if isinstance(e.right, Mul):
            right = f"({right})"
        return f"{render(e.left)} * {right}"
    if isinstance(e, Neg):
        inner = render(e.operand)
        if isinstance(e.operand, (Mul, Neg)) or (
            isinstance(e.operand, Constant) and e.operand.value < 0
        ):
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(e, IntPow):
        b = e.base
        base = render(b)
        bare = isinstance(b, (Add, Sub, QInt)) or (
            isinstance(b, Constant) and b.value >= 0 and b.value.denominator == 1
        )
        if not bare:
            base = f"({base})"
        return f"{base}^{e.exponent}"
    raise TypeError(f"not a SeqExpr node: {e!r}")


# -- parsing --------------------------------------------------------------


@dataclass
class _Token:
    kind: str  # INT, VAR, 'q', or the punctuation character itself; EOF
    text: str
    pos: int  # character offset


_PUNCT = set("+-*^/()[]")


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("INT", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word == "q":
                tokens.append(_Token("q", word, i))
            elif word in VARIABLES:
                tokens.append(_Token("VAR", word, i))
            else:
                raise ExprSyntaxError(
                    f"unknown identifier {word!r}", _byte_offset(text, i), frozenset({"q", "m", "n", "k"})
                )
            i = j
        elif ch in _PUNCT:
            tokens.append(_Token(ch, ch, i))
            i += 1
        else:
            raise ExprSyntaxError(f"unexpected character {ch!r}", _byte_offset(text, i))
    tokens.append(_Token("EOF", "", n))
    return tokens


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


_ATOM_START = frozenset({"INT", "q", "[", "(", "-"})


@dataclass
class _Parser:
    text: str
    tokens: list[_Token] = field(init=False)
    i: int = 0

    def __post_init__(self):
        self.tokens = _tokenize(self.text)

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def fail(self, expected: frozenset[str], tok: _Token | None = None, cls=ExprSyntaxError):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "EOF" else repr(tok.text)
        raise cls(f"unexpected {found}", _byte_offset(self.text, tok.pos), expected)

    def expect(self, kind: str) -> _Token:
        if self.tok.kind != kind:
            self.fail(frozenset({kind}))
        return self.advance()

    def parse(self) -> SeqExpr:
        e = self.expr()
        if self.tok.kind != "EOF":
            self.fail(frozenset({"+", "-", "*", "^", "EOF"}))
        return e

    def expr(self) -> SeqExpr:
        left = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            right = self.term()
            left = Add(left, right) if op == "+" else Sub(left, right)
        return left

    def term(self) -> SeqExpr:
        left = self.factor()
        while self.tok.kind == "*":
            self.advance()
            left = Mul(left, self.factor())
        return left

    def factor(self) -> SeqExpr:
        if self.tok.kind == "-":
            self.advance()
            inner = self.factor()
            if isinstance(inner, Constant):
                return Constant(-inner.value)
            return Neg(inner)
        return self.power()

    def power(self) -> SeqExpr:
        base = self.atom()
        if self.tok.kind == "^":
            self.advance()
            if self.tok.kind == "-":
                self.fail(frozenset({"INT"}), cls=NegativeExponentError)
            exp = int(self.expect("INT").text)
            base = IntPow(base, exp)
        return base

    def atom(self) -> SeqExpr:
        t = self.tok
        if t.kind == "INT":
            self.advance()
            num = int(t.text)
            if self.tok.kind == "/":
                self.advance()
                den_tok = self.expect("INT")
                den = int(den_tok.text)
                if den == 0:
                    raise ExprSyntaxError("zero denominator", _byte_offset(self.text, den_tok.pos))
                return Constant(Fraction(num, den))
            return Constant(Fraction(num))
        if t.kind == "q":
            self.advance()
            if self.tok.kind != "^":
                return Q
            self.advance()
            return QPow(self.qexp())
        if t.kind == "[":
            self.advance()
            form = self.indexform()
            self.expect("]")
            return QInt(form)
        if t.kind == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        self.fail(_ATOM_START)

    def qexp(self) -> IndexForm:
        t = self.tok
        if t.kind == "INT":
            self.advance()
            return IndexForm((), int(t.text))
        if t.kind == "VAR":
            self.advance()
            return IndexForm(((t.text, 1),), 0)
        if t.kind == "-":
            self.advance()
            nxt = self.tok
            if nxt.kind == "INT":
                raise NegativeExponentError(
                    f"negative literal exponent -{nxt.text}",
                    _byte_offset(self.text, t.pos),
                    frozenset({"INT", "VAR", "("}),
                )
            var = self.expect("VAR")
            return IndexForm(((var.text, -1),), 0)
        if t.kind == "(":
            self.advance()
            form = self.indexform()
            self.expect(")")
            return form
        self.fail(frozenset({"INT", "VAR", "(", "-"}))

    def indexform(self) -> IndexForm:
        coeffs: dict[str, int] = {}
        constant = 0
        sign = 1
        if self.tok.kind in ("+", "-"):
            sign = -1 if self.advance().kind == "-" else 1
        while True:
            c, var = self.iterm()
            if var is None:
                constant += sign * c
            else:
                coeffs[var] = coeffs.get(var, 0) + sign * c
            if self.tok.kind not in ("+", "-"):
                break
            sign = -1 if self.advance().kind == "-" else 1
        return IndexForm(tuple(coeffs.items()), constant)

    def iterm(self) -> tuple[int, str | None]:
        t = self.tok
        if t.kind == "VAR":
            self.advance()
            return 1, t.text
        if t.kind == "INT":
            self.advance()
            if self.tok.kind == "*":
                self.advance()
                return int(t.text), self.expect("VAR").text
            return int(t.text), None
        self.fail(frozenset({"INT", "VAR"}))


def parse(text: str) -> SeqExpr:
    """Parse expression text into a :class:`SeqExpr` tree."""
    return _Parser(text).parse()


def parse_poly(text: str) -> Poly:
    """Parse an index-free expression and evaluate it to a Poly."""
    e = parse(text)
    free = variables(e)
    if free:
        raise UnboundVariable(f"expression {text!r} uses index variables {sorted(free)}; expected q only")
    return evaluate(e, {})


def from_poly(p: Poly) -> SeqExpr:
    """A constant-in-the-index expression whose value is ``p``."""
    return parse(str(p))


def as_expr(x: SeqExpr | str | Poly | int | Fraction) -> SeqExpr:
    if isinstance(x, str):
        return parse(x)
    if isinstance(x, Poly):
        return from_poly(x)
    if isinstance(x, (int, Fraction)):
        return Constant(Fraction(x))
    return x

