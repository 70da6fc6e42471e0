"""Exact univariate polynomials in ``q`` with rational coefficients.

A :class:`Poly` is a sparse map ``exponent -> coefficient`` that never stores a
zero coefficient.  Internally the coefficients share one positive denominator
and are held as integer numerators, reduced so that the denominator and the
numerators have no common factor; the representation is therefore canonical
and equality is plain structural equality.  Values are immutable.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from .errors import DivisionByZero, NonZeroRemainder

Scalar = Union[int, Fraction]

#: Degree of the zero polynomial.  Compares below every integer and absorbs
#: addition, so ``degree(0) > 2`` is False and ``degree(0) + n`` stays -inf.
NEG_INF = -math.inf


def _reduced(num: dict[int, int], den: int) -> Poly:
    if den != 1 and num:
        g = den
        for c in num.values():
            g = math.gcd(g, c)
            if g == 1:
                break
        if g != 1:
            num = {e: c // g for e, c in num.items()}
            den //= g
    elif not num:
        den = 1
    return Poly._raw(num, den)


class Poly:
    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        fracs: dict[int, Fraction] = {}
        for e, c in (terms or {}).items():
            if not isinstance(e, int) or e < 0:
                raise ValueError(f"exponent must be a non-negative int, got {e!r}")
            c = Fraction(c)
            if c:
                fracs[e] = c
        den = math.lcm(*(c.denominator for c in fracs.values())) if fracs else 1
        self._num = {e: c.numerator * (den // c.denominator) for e, c in fracs.items()}
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, num: dict[int, int], den: int = 1) -> Poly:
        # caller guarantees: no zero numerators, den > 0, already reduced
        p = cls.__new__(cls)
        p._num = num
        p._den = den
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Scalar) -> Poly:
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: Scalar = 1) -> Poly:
        return cls({e: c})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[int, Fraction]:
        return {e: Fraction(c, self._den) for e, c in self._num.items()}

    def coeff(self, e: int) -> Fraction:
        return Fraction(self._num.get(e, 0), self._den)

    def is_zero(self) -> bool:
        return not self._num

    def is_constant(self) -> bool:
        return not self._num or set(self._num) == {0}

    def degree(self) -> int | float:
        return max(self._num) if self._num else NEG_INF

    def leading_coeff(self) -> Fraction:
        return self.coeff(max(self._num)) if self._num else Fraction(0)

    def at_one(self) -> Fraction:
        """Value at q = 1 (a q-integer collapses to its index there)."""
        return Fraction(sum(self._num.values()), self._den)

    # -- ring operations --------------------------------------------------

    def __add__(self, other: Poly | Scalar) -> Poly:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._num:
            return self
        if not self._num:
            return other
        d1, d2 = self._den, other._den
        if d1 == d2:
            out = dict(self._num)
            items = other._num.items()
            den = d1
        else:
            den = d1 // math.gcd(d1, d2) * d2
            f1, f2 = den // d1, den // d2
            out = {e: c * f1 for e, c in self._num.items()}
            items = ((e, c * f2) for e, c in other._num.items())
        for e, c in items:
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                del out[e]
        return _reduced(out, den) if den != 1 else Poly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw({e: -c for e, c in self._num.items()}, self._den)

    def __sub__(self, other: Poly | Scalar) -> Poly:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> Poly:
        return (-self) + other

    def __mul__(self, other: Poly | Scalar) -> Poly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        out: dict[int, int] = {}
        get = out.get
        for e1, c1 in self._num.items():
            for e2, c2 in other._num.items():
                e = e1 + e2
                out[e] = get(e, 0) + c1 * c2
        out = {e: c for e, c in out.items() if c}
        return _reduced(out, self._den * other._den)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> Poly:
        c = Fraction(c)
        if not c:
            return ZERO
        num = {e: v * c.numerator for e, v in self._num.items()}
        return _reduced(num, self._den * c.denominator)

    def shift(self, k: int) -> Poly:
        """Multiply by q^k."""
        return Poly._raw({e + k: c for e, c in self._num.items()}, self._den)

    def __pow__(self, e: int) -> Poly:
        if not isinstance(e, int) or e < 0:
            raise ValueError(f"exponent must be a non-negative int, got {e!r}")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        """Long division; returns (quotient, remainder) with deg(rem) < deg(other)."""
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        divisor = other.terms
        db = max(divisor)
        lb = divisor[db]
        rem = self.terms
        quot: dict[int, Fraction] = {}
        while rem:
            dr = max(rem)
            if dr < db:
                break
            c = rem[dr] / lb
            s = dr - db
            quot[s] = c
            for e, v in divisor.items():
                t = e + s
                x = rem.get(t, 0) - c * v
                if x:
                    rem[t] = x
                else:
                    rem.pop(t, None)
        return Poly(quot), Poly(rem)

    def exact_div(self, other: Poly) -> Poly:
        quot, rem = self.divmod(other)
        if rem:
            raise NonZeroRemainder(f"({self}) is not divisible by ({other}); remainder {rem}")
        return quot

    # -- value semantics --------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._den == other._den and self._num == other._num

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._den, frozenset(self._num.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._num)

    def __repr__(self) -> str:
        return f"Poly('{self}')"

    def __str__(self) -> str:
        return render(self)


def _coerce(x: object) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    return NotImplemented


ZERO = Poly()
ONE = Poly({0: 1})
Q = Poly({1: 1})


def _fmt_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render(p: Poly) -> str:
    """Canonical text, descending exponents: ``q^3 + 1/2*q - 1``."""
    if p.is_zero():
        return "0"
    parts = []
    for i, e in enumerate(sorted(p._num, reverse=True)):
        c = p.coeff(e)
        mag = abs(c)
        mono = "" if e == 0 else "q" if e == 1 else f"q^{e}"
        if not mono:
            body = _fmt_scalar(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_fmt_scalar(mag)}*{mono}"
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


# -- functional surface ---------------------------------------------------


@lru_cache(maxsize=4096)
def q_integer(n: int) -> Poly:
    """The q-integer ``[n] = 1 + q + ... + q^(n-1)``; ``[0] = 0``."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"q_integer index must be an int, got {n!r}")
    if n < 0:
        raise ValueError(f"q_integer index must be non-negative, got {n}")
    return Poly._raw(dict.fromkeys(range(n), 1))


def q_power(e: int) -> Poly:
    if e < 0:
        raise ValueError(f"negative power of q: {e}")
    return Poly._raw({e: 1})


def add(a: Poly, b: Poly) -> Poly:
    return a + b


def sub(a: Poly, b: Poly) -> Poly:
    return a - b


def mul(a: Poly, b: Poly) -> Poly:
    return a * b


def neg(a: Poly) -> Poly:
    return -a


def scale(c: Scalar, a: Poly) -> Poly:
    return a.scale(c)


def power(a: Poly, e: int) -> Poly:
    return a ** e


def exact_div(a: Poly, b: Poly) -> Poly:
    return a.exact_div(b)


def degree(a: Poly) -> int | float:
    return a.degree()


def poly_sum(ps: Iterable[Poly]) -> Poly:
    total = ZERO
    for p in ps:
        total = total + p
    return total
