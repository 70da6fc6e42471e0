"""Addition rules for q-integers and the three-argument rule engine.

The three-argument rule with coefficient sequences S, T, U, V (each indexed
by ``m`` only) is::

    s_m*[m] + t_m*[n] + u_m*[k] + v_m*[n]*[k]

and it is a valid addition rule when that equals ``[m+n+k]`` for every
positive m, n, k.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Optional

from .errors import PreconditionViolated
from .poly import ONE, Q, Poly, q_integer, q_power
from .seqexpr import SeqExpr, as_expr, evaluate, render, variables


def _check_positive(**indices: int) -> None:
    for name, value in indices.items():
        if not isinstance(value, int) or value < 1:
            raise PreconditionViolated(f"{name} must be a positive integer, got {value!r}")


# -- builtin two- and three-argument rules --------------------------------


def linear_rule(m: int, n: int) -> Poly:
    """``[m] + q^m [n]``."""
    _check_positive(m=m, n=n)
    return q_integer(m) + q_integer(n).shift(m)


def quad1_rule(m: int, n: int) -> Poly:
    """``[m] + [n] + (q - 1)[m][n]``."""
    _check_positive(m=m, n=n)
    a, b = q_integer(m), q_integer(n)
    return a + b + (Q - 1) * a * b


def quad2_rule(m: int, n: int) -> Poly:
    """``q^n [m] + q^m [n] + (1 - q)[m][n]``."""
    _check_positive(m=m, n=n)
    a, b = q_integer(m), q_integer(n)
    return a.shift(n) + b.shift(m) + (1 - Q) * a * b


def mixed3_rule(m: int, n: int, k: int) -> Poly:
    """``[m] + q^m [n] + q^m [k] + q^m (q - 1)[n][k]``."""
    _check_positive(m=m, n=n, k=k)
    bn, bk = q_integer(n), q_integer(k)
    return q_integer(m) + (bn + bk + (Q - 1) * bn * bk).shift(m)


TWO_ARG_RULES: dict[str, Callable[[int, int], Poly]] = {
    "linear": linear_rule,
    "quad1": quad1_rule,
    "quad2": quad2_rule,
}


# -- generic rule -----------------------------------------------------------


@dataclass(frozen=True)
class RuleSpec:
    s: SeqExpr
    t: SeqExpr
    u: SeqExpr
    v: SeqExpr

    def __post_init__(self):
        for name in ("s", "t", "u", "v"):
            expr = as_expr(getattr(self, name))
            object.__setattr__(self, name, expr)
            extra = variables(expr) - {"m"}
            if extra:
                raise PreconditionViolated(
                    f"coefficient {name} may only use the index m, found {sorted(extra)}"
                )

    @classmethod
    def from_strings(cls, s: str, t: str, u: str, v: str) -> RuleSpec:
        return cls(s, t, u, v)

    def coefficients(self, m: int) -> tuple[Poly, Poly, Poly, Poly]:
        b = {"m": m}
        return (evaluate(self.s, b), evaluate(self.t, b), evaluate(self.u, b), evaluate(self.v, b))

    def to_dict(self) -> dict:
        return {name: render(getattr(self, name)) for name in ("s", "t", "u", "v")}


MIXED3 = RuleSpec("1", "q^m", "q^m", "q^m*(q-1)")
BUILTIN_SPECS = {"mixed3": MIXED3}


def _combine(coeffs: tuple[Poly, Poly, Poly, Poly], m: int, n: int, k: int) -> Poly:
    s, t, u, v = coeffs
    bn, bk = q_integer(n), q_integer(k)
    return s * q_integer(m) + t * bn + u * bk + v * bn * bk


def apply_rule(r: RuleSpec, m: int, n: int, k: int) -> Poly:
    _check_positive(m=m, n=n, k=k)
    return _combine(r.coefficients(m), m, n, k)


# -- verification -----------------------------------------------------------


@dataclass(frozen=True)
class Failure:
    indices: tuple[int, ...]
    residual: Poly


@dataclass
class VerificationReport:
    """Outcome of an exhaustive sweep over a box of indices.

    ``residual`` on each failure is ``computed - expected`` and is never zero.
    """

    checked_range: tuple[int, ...]
    failures: list[Failure] = field(default_factory=list)
    names: tuple[str, ...] = ("m", "n", "k")

    @property
    def passed(self) -> bool:
        return not self.failures

    def failure_at(self, *indices: int) -> Optional[Failure]:
        for f in self.failures:
            if f.indices == indices:
                return f
        return None

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "range": dict(zip(self.names, self.checked_range)),
            "failures": [
                {**dict(zip(self.names, f.indices)), "residual": str(f.residual)}
                for f in self.failures
            ],
        }


def sweep(
    fn: Callable[..., Poly],
    expected: Callable[..., Poly],
    bounds: tuple[int, ...],
    names: tuple[str, ...] = ("m", "n", "k"),
) -> VerificationReport:
    """Check ``fn(*idx) == expected(*idx)`` for every idx in the box, lexicographically."""
    for b in bounds:
        if b < 1:
            raise PreconditionViolated(f"sweep bounds must be >= 1, got {bounds}")
    report = VerificationReport(tuple(bounds), names=names[: len(bounds)])
    for idx in product(*(range(1, b + 1) for b in bounds)):
        residual = fn(*idx) - expected(*idx)
        if residual:
            report.failures.append(Failure(idx, residual))
    return report


def verify_rule(r: RuleSpec, max_m: int, max_n: int, max_k: int) -> VerificationReport:
    coeffs = lru_cache(maxsize=None)(r.coefficients)
    return sweep(
        lambda m, n, k: _combine(coeffs(m), m, n, k),
        lambda m, n, k: q_integer(m + n + k),
        (max_m, max_n, max_k),
    )


def verify_two_arg_rule(name: str, max_m: int, max_n: int) -> VerificationReport:
    rule = TWO_ARG_RULES[name]
    return sweep(rule, lambda m, n: q_integer(m + n), (max_m, max_n), ("m", "n"))


# -- coefficient recovery ---------------------------------------------------


@dataclass(frozen=True)
class ConstantSDerivation:
    """Coefficients forced on a rule whose S-sequence is the constant ``a_m``."""

    m: int
    a_m: Fraction
    t: Poly
    u: Poly
    v: Poly

    def residual(self, n: int, k: int) -> Poly:
        """``(a_m - 1) [m] (1 - [n] - [k] + [n][k])``; zero for all n, k iff a_m = 1."""
        bn, bk = q_integer(n), q_integer(k)
        return (q_integer(self.m) * (ONE - bn - bk + bn * bk)).scale(self.a_m - 1)

    def rule_value(self, n: int, k: int) -> Poly:
        return _combine((Poly.const(self.a_m), self.t, self.u, self.v), self.m, n, k)


def derive_from_constant_s(a: SeqExpr | str, m: int) -> ConstantSDerivation:
    """Recover t_m, u_m, v_m from a constant S-sequence at index m.

    Comparing (m, n, 1) against (m, 1, n) forces t_m = u_m; comparing
    (m, 1, 2) against (m, 1, 1) gives q^(m+2) = q*u_m + q*v_m; and the
    (m, 1, 1) instance then reduces to [m+1] = a_m [m] + u_m.
    """
    _check_positive(m=m)
    a_poly = evaluate(as_expr(a), {"m": m})
    if not a_poly.is_constant():
        raise PreconditionViolated(f"a must be constant in q at m={m}, got {a_poly}")
    a_m = a_poly.coeff(0)
    u = q_integer(m + 1) - q_integer(m).scale(a_m)
    v = q_power(m + 1) - u
    return ConstantSDerivation(m=m, a_m=a_m, t=u, u=u, v=v)


@dataclass(frozen=True)
class Witness:
    m: int
    n: int
    k: int
    lhs: Poly
    rhs: Poly

    @property
    def residual(self) -> Poly:
        return self.lhs - self.rhs


def forced_coefficients(s_m: Poly, m: int) -> tuple[Poly, Poly, Poly]:
    """(t_m, u_m, v_m) that the small cases force once s_m is fixed."""
    u = q_integer(m + 1) - s_m * q_integer(m)
    return u, u, q_power(m + 1) - u


def degree_obstruction(s: SeqExpr | str, m: int, search_bound: int) -> Optional[Witness]:
    """First (n, k) with m < n + k - 1 where the forced rule misses ``[m+n+k]``.

    Returns None when no such pair exists within ``search_bound``.
    """
    _check_positive(m=m)
    if search_bound < 2:
        raise PreconditionViolated(f"search_bound must be >= 2, got {search_bound}")
    s_m = evaluate(as_expr(s), {"m": m})
    if not s_m.degree() > 2:
        raise PreconditionViolated(f"deg s_m must exceed 2, got deg({s_m}) = {s_m.degree()}")
    t, u, v = forced_coefficients(s_m, m)
    for n in range(1, search_bound + 1):
        for k in range(1, search_bound + 1):
            if not m < n + k - 1:
                continue
            lhs = _combine((s_m, t, u, v), m, n, k)
            rhs = q_integer(m + n + k)
            if lhs != rhs:
                return Witness(m, n, k, lhs, rhs)
    return None
