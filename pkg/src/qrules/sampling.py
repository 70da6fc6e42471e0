"""Deterministic random generators for polynomials, expressions and specs.

Every stream is a :class:`random.Random` seeded with a string label.  CPython
hashes string seeds with SHA-512, so a label such as ``"certify/42/17"``
yields the same draws on every platform and Python version >= 3.2.  Trial
``i`` of a run with seed ``s`` always uses its own stream ``label/s/i``
(a counter-based split), so trials can be computed in any order.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .poly import Poly
from .seqexpr import (
    Add,
    Constant,
    IndexForm,
    IntPow,
    Mul,
    Neg,
    Q,
    QInt,
    QPow,
    SeqExpr,
    Sub,
    evaluate,
    from_poly,
)
from .zero_identity import ZeroIdentitySpec


def stream(label: str, seed: int, index: int = 0) -> random.Random:
    return random.Random(f"{label}/{seed}/{index}")


def random_poly(rng: random.Random, max_degree: int, coeff_bound: int) -> Poly:
    """Integer coefficients drawn uniformly from [-coeff_bound, coeff_bound]."""
    deg = rng.randint(0, max_degree)
    return Poly({e: rng.randint(-coeff_bound, coeff_bound) for e in range(deg + 1)})


def random_index_form(rng: random.Random, names: tuple[str, ...]) -> IndexForm:
    # non-negative coefficients keep every binding of naturals in range
    coeffs = tuple((v, rng.randint(0, 2)) for v in names if rng.random() < 0.7)
    return IndexForm(coeffs, rng.randint(0, 2))


def random_constant(rng: random.Random) -> Constant:
    num = rng.randint(-4, 4)
    den = rng.choice((1, 1, 1, 2, 3))
    return Constant(Fraction(num, den))


def random_expr(rng: random.Random, depth: int, names: tuple[str, ...] = ("m", "n", "k")) -> SeqExpr:
    """A random tree of at most ``depth`` levels over the given index variables."""
    if depth <= 1 or rng.random() < 0.25:
        leaf = rng.randrange(4 if names else 2)
        if leaf == 0:
            return random_constant(rng)
        if leaf == 1:
            return Q if rng.random() < 0.5 else QPow(IndexForm((), rng.randint(0, 3)))
        if leaf == 2:
            return QPow(random_index_form(rng, names))
        return QInt(random_index_form(rng, names))
    kind = rng.randrange(6)
    if kind == 0:
        return Add(random_expr(rng, depth - 1, names), random_expr(rng, depth - 1, names))
    if kind == 1:
        return Sub(random_expr(rng, depth - 1, names), random_expr(rng, depth - 1, names))
    if kind == 2:
        return Mul(random_expr(rng, depth - 1, names), random_expr(rng, depth - 1, names))
    if kind == 3:
        return Neg(random_expr(rng, depth - 1, names))
    if kind == 4:
        return IntPow(random_expr(rng, depth - 1, names), rng.randint(0, 2))
    return random_constant(rng)


def random_binding(rng: random.Random, names: tuple[str, ...] = ("m", "n", "k"), high: int = 4) -> dict[str, int]:
    return {v: rng.randint(0, high) for v in names}


def random_nonzero_rational(rng: random.Random) -> Fraction:
    num = rng.choice([i for i in range(-5, 6) if i])
    return Fraction(num, rng.randint(1, 4))


def random_zero_spec(rng: random.Random, depth: int = 4, max_degree: int = 3) -> ZeroIdentitySpec:
    """Random r_{1,k} in k and r_{n,1} in n (depth <= ``depth``) sharing r(1).

    The two sequences are drawn independently, then r_{n,1} is shifted by the
    constant-in-n polynomial ``r_{1,1} - r_{n,1}(1)`` so that both start at
    the same initial polynomial.
    """
    r1k = random_expr(rng, depth, ("k",))
    rn1 = random_expr(rng, depth, ("n",))
    gap = evaluate(r1k, {"k": 1}) - evaluate(rn1, {"n": 1})
    if gap:
        rn1 = Add(rn1, from_poly(gap))
    return ZeroIdentitySpec(
        r1k=r1k,
        rn1=rn1,
        s0=random_poly(rng, max_degree, 5),
        t0=random_poly(rng, max_degree, 5),
        u0=random_nonzero_rational(rng),
        v0=random_nonzero_rational(rng),
    )
