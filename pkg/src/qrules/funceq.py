"""Polynomial functional equations attached to the addition rules.

Three-index equation (the one iterated here)::

    f_{m+n+k} = f_m + q^m f_n + q^m f_k + q^m (q - 1) f_n f_k

Two-index equations, with closed-form solutions::

    linear:  f_{m+n} = f_m + q^m f_n                        f_n = [n] f_1
    quad1:   f_{m+n} = f_m + f_n + (q - 1) f_m f_n           f_n = (1 - (1 + (q-1) f_1)^n) / (1 - q)
    quad2:   f_{m+n} = q^n f_m + q^m f_n + (1 - q) f_m f_n   f_n = ((q + (1-q) f_1)^n - q^n) / (1 - q)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import NonZeroRemainder, PreconditionViolated
from .poly import ONE, Q, ZERO, Poly, q_integer, q_power
from .rules import VerificationReport, _check_positive, sweep
from .sampling import random_poly, stream

ONE_MINUS_Q = ONE - Q

ITERATED = "iterated"
CLOSED_FORM = "closed-form"
USER_SUPPLIED = "user-supplied"


@dataclass
class FESequence:
    """``values[i]`` holds f_{i+1}."""

    values: list[Poly]
    source: str = USER_SUPPLIED
    consistent_up_to: Optional[int] = None

    def __post_init__(self):
        if self.consistent_up_to is None:
            self.consistent_up_to = len(self.values)
        if self.consistent_up_to > len(self.values):
            raise ValueError("consistent_up_to exceeds the sequence length")

    def __len__(self) -> int:
        return len(self.values)

    def f(self, n: int) -> Poly:
        if n < 1:
            raise IndexError(f"sequence is indexed from 1, got {n}")
        return self.values[n - 1]

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "consistent_up_to": self.consistent_up_to,
            "values": [str(p) for p in self.values],
        }


# -- the three-index recurrence ---------------------------------------------


def quafe_step(fm: Poly, fn: Poly, fk: Poly, m: int) -> Poly:
    _check_positive(m=m)
    return fm + (fn + fk + (Q - 1) * fn * fk).shift(m)


def decompositions(total: int) -> list[tuple[int, int, int]]:
    """All (m, n, k) of positive integers summing to ``total``, lexicographic."""
    return [
        (m, n, total - m - n)
        for m in range(1, total - 1)
        for n in range(1, total - m)
    ]


@dataclass(frozen=True)
class Violation:
    N: int
    reference: tuple[int, int, int]
    other: tuple[int, int, int]
    residual: Poly  # value(other) - value(reference)

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "decompA": list(self.reference),
            "decompB": list(self.other),
            "residual": str(self.residual),
        }


TRIVIAL_ZERO = (ZERO, ZERO)
TRIVIAL_QINT = (q_integer(1), q_integer(2))


def classify_seed(f1: Poly, f2: Poly) -> str:
    if (f1, f2) == TRIVIAL_ZERO:
        return "zero"
    if (f1, f2) == TRIVIAL_QINT:
        return "q-integer"
    return "none"


@dataclass
class ConsistencyReport:
    seed: tuple[Poly, Poly]
    horizon: int
    sequence: FESequence
    violations: list[Violation] = field(default_factory=list)
    trivial_match: str = "none"

    @property
    def consistent(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "seed": {"f1": str(self.seed[0]), "f2": str(self.seed[1])},
            "horizon": self.horizon,
            "consistent": self.consistent,
            "trivial_match": self.trivial_match,
            "violations": [v.to_dict() for v in self.violations],
            "sequence": self.sequence.to_dict(),
        }


def extend_sequence(f1: Poly, f2: Poly, horizon: int) -> ConsistencyReport:
    """Grow f_3, f_4, ... from the seed until ``horizon`` or the first clash.

    At each N every decomposition N = m + n + k must give the same value; the
    lexicographically first decomposition is the reference, and every one
    that disagrees with it is recorded before extension stops.
    """
    if horizon < 3:
        raise PreconditionViolated(f"horizon must be >= 3, got {horizon}")
    values = [f1, f2]
    violations: list[Violation] = []
    for N in range(3, horizon + 1):
        decomps = decompositions(N)
        ref = decomps[0]
        ref_value = quafe_step(values[ref[0] - 1], values[ref[1] - 1], values[ref[2] - 1], ref[0])
        for d in decomps[1:]:
            value = quafe_step(values[d[0] - 1], values[d[1] - 1], values[d[2] - 1], d[0])
            if value != ref_value:
                violations.append(Violation(N, ref, d, value - ref_value))
        if violations:
            break
        values.append(ref_value)
    seq = FESequence(values, ITERATED, len(values))
    return ConsistencyReport((f1, f2), horizon, seq, violations, classify_seed(f1, f2))


@dataclass
class CertifySummary:
    horizon: int
    trials: int
    max_degree: int
    coeff_bound: int
    rng_seed: int
    consistent: int = 0
    inconsistent: int = 0
    counterexamples: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "horizon": self.horizon,
            "trials": self.trials,
            "max_degree": self.max_degree,
            "coeff_bound": self.coeff_bound,
            "seed": self.rng_seed,
            "consistent_nontrivial": self.consistent,
            "inconsistent": self.inconsistent,
            "counterexamples": self.counterexamples,
        }


def sample_seed(rng_seed: int, trial: int, max_degree: int, coeff_bound: int) -> tuple[Poly, Poly]:
    """Seed pair for one trial; the two trivial seeds are redrawn."""
    rng = stream("certify-trivial", rng_seed, trial)
    while True:
        f1 = random_poly(rng, max_degree, coeff_bound)
        f2 = random_poly(rng, max_degree, coeff_bound)
        if classify_seed(f1, f2) == "none":
            return f1, f2


def certify_trivial(
    horizon: int, trials: int, max_degree: int, coeff_bound: int, rng_seed: int
) -> CertifySummary:
    """Randomized search for non-trivial seeds that extend consistently.

    Any seed listed in ``counterexamples`` extended without a clash up to
    ``horizon``.  With a small horizon that is vacuous (N = 3 has a single
    decomposition), so only horizons >= 4 carry evidence.
    """
    if trials < 1:
        raise PreconditionViolated(f"trials must be >= 1, got {trials}")
    if coeff_bound < 1 or max_degree < 0:
        # only the zero seed could be drawn, and it is excluded
        raise PreconditionViolated("coeff_bound must be >= 1 and max_degree >= 0")
    summary = CertifySummary(horizon, trials, max_degree, coeff_bound, rng_seed)
    for trial in range(trials):
        f1, f2 = sample_seed(rng_seed, trial, max_degree, coeff_bound)
        report = extend_sequence(f1, f2, horizon)
        if report.consistent:
            summary.consistent += 1
            summary.counterexamples.append({"trial": trial, "f1": str(f1), "f2": str(f2)})
        else:
            summary.inconsistent += 1
    return summary


def ansatz_check(h: Poly, n: int = 1) -> Poly:
    """Residual ``h^2 - h`` left when f_j = h [j] is pushed through the N = n + 2 step.

    The step value minus ``h [n+2]`` equals ``q^n (q - 1)(h^2 - h)``; that
    factor is divided out exactly.
    """
    _check_positive(n=n)
    f = lambda j: h * q_integer(j)
    excess = quafe_step(f(n), f(1), f(1), n) - f(n + 2)
    return excess.exact_div(q_power(n) * (Q - 1))


# -- two-index equations ----------------------------------------------------


def solve_linear(f1: Poly, n: int) -> Poly:
    _check_positive(n=n)
    return q_integer(n) * f1


def _exact_over_one_minus_q(numerator: Poly) -> Poly:
    try:
        return numerator.exact_div(ONE_MINUS_Q)
    except NonZeroRemainder as exc:
        raise AssertionError(f"closed form numerator not divisible by 1 - q: {numerator}") from exc


def solve_quad1(f1: Poly, n: int) -> Poly:
    _check_positive(n=n)
    return _exact_over_one_minus_q(ONE - (ONE + (Q - 1) * f1) ** n)


def solve_quad2(f1: Poly, n: int) -> Poly:
    _check_positive(n=n)
    return _exact_over_one_minus_q((Q + ONE_MINUS_Q * f1) ** n - q_power(n))


SOLVERS: dict[str, Callable[[Poly, int], Poly]] = {
    "linear": solve_linear,
    "quad1": solve_quad1,
    "quad2": solve_quad2,
}


def two_var_rhs(kind: str, fm: Poly, fn: Poly, m: int, n: int) -> Poly:
    if kind == "linear":
        return fm + fn.shift(m)
    if kind == "quad1":
        return fm + fn + (Q - 1) * fm * fn
    if kind == "quad2":
        return fm.shift(n) + fn.shift(m) + ONE_MINUS_Q * fm * fn
    raise ValueError(f"unknown equation kind {kind!r}")


def closed_form_sequence(kind: str, f1: Poly, length: int) -> FESequence:
    solve = SOLVERS[kind]
    return FESequence([solve(f1, n) for n in range(1, length + 1)], CLOSED_FORM)


def verify_two_var_fe(kind: str, f: FESequence, max_m: int, max_n: int) -> VerificationReport:
    if kind not in SOLVERS:
        raise ValueError(f"unknown equation kind {kind!r}")
    if len(f) < max_m + max_n:
        raise PreconditionViolated(
            f"sequence has {len(f)} terms; the ({max_m}, {max_n}) box needs {max_m + max_n}"
        )
    return sweep(
        lambda m, n: two_var_rhs(kind, f.f(m), f.f(n), m, n),
        lambda m, n: f.f(m + n),
        (max_m, max_n),
        ("m", "n"),
    )


def random_f1(rng_seed: int, trial: int, max_degree: int = 5, coeff_bound: int = 5) -> Poly:
    return random_poly(stream("f1", rng_seed, trial), max_degree, coeff_bound)
