"""End-to-end acceptance checks; each prints one PASS/FAIL line.

All comparisons are exact: a criterion passes only when every residual is the
zero polynomial (or, where a failure is required, a nonzero one).
"""
from dataclasses import replace

import pytest

from qrules.funceq import (
    ansatz_check, certify_trivial, closed_form_sequence, extend_sequence, random_f1,
    solve_quad1, solve_quad2, verify_two_var_fe,
)
from qrules.poly import ONE, ZERO, Poly, q_integer, q_power
from qrules.rules import (
    degree_obstruction, derive_from_constant_s, mixed3_rule, verify_two_arg_rule,
)
from qrules.sampling import random_binding, random_expr, random_zero_spec, stream
from qrules.seqexpr import evaluate, normalize, parse, render
from qrules.zero_identity import build_family, verify_identity

from golden_cases import CASES, golden_path, run
from malformed import CASES as MALFORMED

ZERO_SPEC_SEED = 2024
PARSER_SEED = 7


@pytest.fixture
def report(capsys):
    def emit(number: int, title: str, problems: list[str]) -> None:
        status = "PASS" if not problems else "FAIL"
        with capsys.disabled():
            detail = "" if not problems else f": {problems[0]} ({len(problems)} problem(s))"
            print(f"\n[{status}] criterion {number}: {title}{detail}")
        assert not problems, problems

    return emit


def test_criterion_1_rule_sweeps(report):
    problems = []
    for name in ("linear", "quad1", "quad2"):
        r = verify_two_arg_rule(name, 25, 25)
        if not r.passed:
            problems.append(f"{name} fails at {r.failures[0].indices}")
    for m in range(1, 21):
        for n in range(1, 21):
            for k in range(1, 21):
                if mixed3_rule(m, n, k) != q_integer(m + n + k):
                    problems.append(f"mixed3 fails at {(m, n, k)}")
    report(1, "two-argument rules to 25, mixed3 to 20", problems)


def test_criterion_2_constant_s(report):
    problems = []
    for m in range(1, 26):
        d = derive_from_constant_s("1", m)
        qm = q_power(m)
        if not (d.t == d.u == qm and d.v == qm * Poly({1: 1, 0: -1})):
            problems.append(f"a=1 gives wrong coefficients at m={m}")
    for a in ("0", "2", "-1", "1/2"):
        for m in range(1, 11):
            if derive_from_constant_s(a, m).residual(2, 2) == ZERO:
                problems.append(f"a={a} has zero residual at m={m}")
    report(2, "constant s_m forces the mixed rule", problems)


def test_criterion_3_degree_obstruction(report):
    problems = []
    for s in ("q^3", "q^4", "2*q^3", "q^3 + q"):
        for m in (1, 2, 3):
            w = degree_obstruction(s, m, 4)
            if w is None:
                problems.append(f"no witness for s={s}, m={m}")
            elif w.rhs != q_integer(w.m + w.n + w.k) or w.lhs - w.rhs == ZERO:
                problems.append(f"witness for s={s}, m={m} does not check out")
    report(3, "deg s_m > 2 has a witness within bound 4", problems)


def test_criterion_4_zero_identity(report):
    problems = []
    for i in range(50):
        spec = random_zero_spec(stream("zero-spec", ZERO_SPEC_SEED, i))
        family = build_family(spec)
        r = verify_identity(family, 12, 12, 12)
        if not r.passed:
            problems.append(f"spec {i} fails at {r.failures[0].indices}")
        if family.w == ZERO:
            problems.append(f"spec {i} has w = 0, so a sign flip is invisible")
            continue
        corrupt = replace(family, wprime=lambda m, f=family.wprime: -f(m))
        if verify_identity(corrupt, 1, 1, 1).failure_at(1, 1, 1) is None:
            problems.append(f"spec {i}: sign flip of w' not caught at (1,1,1)")
    report(4, "50 random zero-identity families, corruption detected", problems)


def test_criterion_5_triviality(report):
    problems = []
    zero = extend_sequence(ZERO, ZERO, 12)
    if not zero.consistent or zero.sequence.values != [ZERO] * 12:
        problems.append("zero seed does not extend to 12")
    qint = extend_sequence(q_integer(1), q_integer(2), 12)
    if not qint.consistent or qint.sequence.values != [q_integer(N) for N in range(1, 13)]:
        problems.append("q-integer seed does not extend to 12")
    summary = certify_trivial(10, 200, 4, 5, 42)
    if summary.consistent:
        problems.append(f"{summary.consistent} consistent non-trivial seeds")
    for c in range(-2, 3):
        for d in range(4):
            h = Poly({d: c})
            if (ansatz_check(h) == ZERO) != (h in (ZERO, ONE)):
                problems.append(f"ansatz misjudges h={h}")
    report(5, "only the trivial seeds extend", problems)


def test_criterion_6_closed_forms(report):
    problems = []
    for trial in range(50):
        f1 = random_f1(11, trial, 5, 5)
        for kind in ("quad1", "quad2"):
            try:
                seq = closed_form_sequence(kind, f1, 12)
            except AssertionError as exc:
                problems.append(f"{kind} trial {trial}: {exc}")
                continue
            if not verify_two_var_fe(kind, seq, 6, 6).passed:
                problems.append(f"{kind} trial {trial} violates its equation")
    for n in range(1, 13):
        if not solve_quad1(ONE, n) == solve_quad2(ONE, n) == q_integer(n):
            problems.append(f"f1 = 1 does not give [n] at n={n}")
    report(6, "closed forms are exact and solve their equations", problems)


def test_criterion_7_parser(report):
    problems = []
    for i in range(500):
        rng = stream("parser-roundtrip", PARSER_SEED, i)
        expr = random_expr(rng, 6)
        text = render(expr)
        back = parse(text)
        if back != normalize(expr):
            problems.append(f"tree {i} changes shape: {text}")
        for _ in range(10):
            b = random_binding(rng)
            if evaluate(back, b) != evaluate(expr, b):
                problems.append(f"tree {i} evaluates differently at {b}")
    for text, offset, cls in MALFORMED:
        try:
            parse(text)
            problems.append(f"{text!r} parsed")
        except cls as exc:
            if exc.offset != offset:
                problems.append(f"{text!r}: offset {exc.offset}, expected {offset}")
    report(7, "500 round trips and malformed fixtures", problems)


def test_criterion_8_cli_golden(report):
    problems = []
    for name, argv in sorted(CASES.items()):
        a, b = run(argv), run(argv)
        if a.stdout != b.stdout:
            problems.append(f"{name} differs between runs")
        elif a.stdout != golden_path(name).read_bytes():
            problems.append(f"{name} differs from its golden file")
    report(8, "CLI JSON is byte-identical to the golden files", problems)
