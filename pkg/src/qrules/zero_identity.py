"""Quadratic zero identities for three q-integers.

A family of six sequences r'_{n,k}, s'_k, t'_n, u'_m, v'_m, w'_m satisfies

    r'_{n,k} [m] + u'_m s'_k [n] + v'_m t'_n [k] + w'_m [n][k] = 0

for all positive m, n, k when it is built from free data (r_{1,k}, r_{n,1},
s, t, u, v) as in :func:`build_family`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .errors import InitialMismatch, PreconditionViolated, ZeroConstant
from .poly import Poly, q_integer
from .rules import VerificationReport, sweep
from .seqexpr import SeqExpr, as_expr, evaluate, render, variables


@dataclass(frozen=True)
class ZeroIdentitySpec:
    r1k: SeqExpr  # in k
    rn1: SeqExpr  # in n
    s0: Poly
    t0: Poly
    u0: Fraction
    v0: Fraction

    def __post_init__(self):
        r1k, rn1 = as_expr(self.r1k), as_expr(self.rn1)
        if variables(r1k) - {"k"}:
            raise PreconditionViolated(f"r1k may only use the index k: {render(r1k)}")
        if variables(rn1) - {"n"}:
            raise PreconditionViolated(f"rn1 may only use the index n: {render(rn1)}")
        object.__setattr__(self, "r1k", r1k)
        object.__setattr__(self, "rn1", rn1)
        for name in ("s0", "t0"):
            value = getattr(self, name)
            if isinstance(value, (int, Fraction)):
                object.__setattr__(self, name, Poly.const(value))
            elif not isinstance(value, Poly):
                raise TypeError(f"{name} must be a Poly, got {type(value).__name__}")
        for name in ("u0", "v0"):
            value = getattr(self, name)
            if isinstance(value, Poly):
                raise TypeError(f"{name} must be a rational constant, not a polynomial")
            value = Fraction(value)
            if value == 0:
                raise ZeroConstant(f"{name} must be nonzero")
            object.__setattr__(self, name, value)
        if self.r_initial != evaluate(self.rn1, {"n": 1}):
            raise InitialMismatch(
                f"r1k(1) = {self.r_initial} differs from rn1(1) = {evaluate(self.rn1, {'n': 1})}"
            )

    @property
    def r_initial(self) -> Poly:
        return evaluate(self.r1k, {"k": 1})

    def to_dict(self) -> dict:
        return {
            "r1k": render(self.r1k),
            "rn1": render(self.rn1),
            "s0": str(self.s0),
            "t0": str(self.t0),
            "u0": str(self.u0),
            "v0": str(self.v0),
        }


@dataclass(frozen=True)
class DerivedFamily:
    rprime: Callable[[int, int], Poly]
    sprime: Callable[[int], Poly]
    tprime: Callable[[int], Poly]
    uprime: Callable[[int], Poly]
    vprime: Callable[[int], Poly]
    wprime: Callable[[int], Poly]
    w: Poly | None = None  # w'_1


def build_family(spec: ZeroIdentitySpec) -> DerivedFamily:
    r = spec.r_initial
    s, t, u, v = spec.s0, spec.t0, spec.u0, spec.v0
    w = -(r + s.scale(u) + t.scale(v))

    @lru_cache(maxsize=None)
    def r1k(k: int) -> Poly:
        return evaluate(spec.r1k, {"k": k})

    @lru_cache(maxsize=None)
    def rn1(n: int) -> Poly:
        return evaluate(spec.rn1, {"n": n})

    @lru_cache(maxsize=None)
    def rprime(n: int, k: int) -> Poly:
        bn, bk = q_integer(n), q_integer(k)
        return r1k(k) * bn + rn1(n) * bk - r * bn * bk

    @lru_cache(maxsize=None)
    def sprime(k: int) -> Poly:
        bk = q_integer(k)
        return (r1k(k) - r * bk - s.scale(u) * bk).scale(-1 / u)

    @lru_cache(maxsize=None)
    def tprime(n: int) -> Poly:
        bn = q_integer(n)
        return (rn1(n) - r * bn - t.scale(v) * bn).scale(-1 / v)

    return DerivedFamily(
        rprime=rprime,
        sprime=sprime,
        tprime=tprime,
        uprime=lambda m: q_integer(m).scale(u),
        vprime=lambda m: q_integer(m).scale(v),
        wprime=lambda m: w * q_integer(m),
        w=w,
    )


def evaluate_identity(f: DerivedFamily, m: int, n: int, k: int) -> Poly:
    bm, bn, bk = q_integer(m), q_integer(n), q_integer(k)
    return (
        f.rprime(n, k) * bm
        + f.uprime(m) * f.sprime(k) * bn
        + f.vprime(m) * f.tprime(n) * bk
        + f.wprime(m) * bn * bk
    )


def verify_identity(f: DerivedFamily, max_m: int, max_n: int, max_k: int) -> VerificationReport:
    return sweep(
        lambda m, n, k: evaluate_identity(f, m, n, k),
        lambda m, n, k: Poly(),
        (max_m, max_n, max_k),
    )


def verify_family(spec: ZeroIdentitySpec, max_m: int, max_n: int, max_k: int) -> VerificationReport:
    return verify_identity(build_family(spec), max_m, max_n, max_k)
