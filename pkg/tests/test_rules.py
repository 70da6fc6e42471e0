from fractions import Fraction
import random

import pytest

from qrules.errors import PreconditionViolated
from qrules.poly import Q, q_integer, q_power
from qrules.rules import (
    MIXED3, RuleSpec, apply_rule, degree_obstruction, derive_from_constant_s, linear_rule,
    mixed3_rule, quad1_rule, quad2_rule, verify_rule, verify_two_arg_rule,
)
from qrules.seqexpr import from_poly

from oracle import q, qint, to_poly


def test_two_arg_examples():
    assert linear_rule(1, 1) == to_poly(1 + q)
    assert linear_rule(2, 3) == to_poly(qint(5))
    assert quad1_rule(1, 1) == to_poly(2 + (q - 1))
    assert quad2_rule(1, 1) == to_poly(2 * q + (1 - q))
    assert quad1_rule(2, 2) == to_poly(qint(2) + qint(2) + (q - 1) * qint(2) ** 2) == q_integer(4)


@pytest.mark.parametrize("rule", [linear_rule, quad1_rule, quad2_rule])
def test_two_arg_rules_reject_zero_index(rule):
    with pytest.raises(PreconditionViolated):
        rule(1, 0)


def test_mixed3_examples():
    assert mixed3_rule(1, 1, 1) == to_poly(1 + 2 * q + q * (q - 1)) == q_integer(3)
    assert mixed3_rule(2, 1, 1) == to_poly(qint(2) + 2 * q**2 + q**2 * (q - 1)) == q_integer(4)
    assert mixed3_rule(3, 2, 1) == to_poly(
        qint(3) + q**3 * qint(2) + q**3 + q**3 * (q - 1) * qint(2)
    ) == q_integer(6)


def test_two_arg_rules_sweep():
    for m in range(1, 26):
        for n in range(1, 26):
            target = q_integer(m + n)
            assert linear_rule(m, n) == target
            assert quad1_rule(m, n) == target
            assert quad2_rule(m, n) == target


def test_mixed3_sweep_and_composition():
    for m in range(1, 26):
        for n in range(1, 26):
            for k in range(1, 26):
                value = mixed3_rule(m, n, k)
                assert value == q_integer(m + n + k)
                assert value == q_integer(m) + q_power(m) * quad1_rule(n, k)


def test_mixed3_symmetric_in_n_and_k():
    rng = random.Random(7)
    for _ in range(200):
        m, n, k = (rng.randint(1, 30) for _ in range(3))
        assert mixed3_rule(m, n, k) == mixed3_rule(m, k, n)


def test_apply_rule_examples():
    assert apply_rule(MIXED3, 1, 1, 1) == q_integer(3)
    assert apply_rule(MIXED3, 4, 3, 2) == to_poly(qint(9))
    off = RuleSpec("2", "q^m", "q^m", "q^m*(q-1)")
    residual = apply_rule(off, 1, 1, 1) - q_integer(3)
    assert residual == q_integer(1)


def test_rule_spec_only_uses_m():
    with pytest.raises(PreconditionViolated):
        RuleSpec("1", "q^n", "q^m", "q^m")


def test_verify_rule_examples():
    report = verify_rule(MIXED3, 20, 20, 20)
    assert report.passed and report.failures == []
    bad = verify_rule(RuleSpec("1", "q^m", "q^m", "q^m"), 2, 2, 2)
    assert not bad.passed
    failure = bad.failure_at(1, 1, 2)
    assert failure is not None
    # v = q^m overshoots q^m (q - 1) by q^m (2 - q), so the residual is q^m (2 - q) [n][k]
    assert failure.residual == to_poly(q * (2 - q) * qint(1) * qint(2))
    assert all(f.residual for f in bad.failures)
    assert [f.indices for f in bad.failures] == sorted(f.indices for f in bad.failures)


def test_verify_rule_honours_bounds():
    # s = 1, t = u = q, v = q (q - 1) is right exactly when m = 1
    only_m1 = RuleSpec("1", "q", "q", "q*(q-1)")
    assert verify_rule(only_m1, 1, 1, 1).passed
    assert verify_rule(only_m1, 1, 5, 5).passed
    assert not verify_rule(only_m1, 2, 1, 1).passed


def test_verification_report_json_shape():
    d = verify_rule(RuleSpec("1", "q^m", "q^m", "q^m"), 1, 1, 2).to_dict()
    assert d["passed"] is False
    assert d["range"] == {"m": 1, "n": 1, "k": 2}
    assert d["failures"][0] == {"m": 1, "n": 1, "k": 1, "residual": "-q^2 + 2*q"}


def test_two_arg_verification():
    for name in ("linear", "quad1", "quad2"):
        report = verify_two_arg_rule(name, 15, 15)
        assert report.passed and report.checked_range == (15, 15)


# -- constant s -----------------------------------------------------------


def test_derive_unit_constant():
    d = derive_from_constant_s("1", 5)
    assert (d.t, d.u, d.v) == (q_power(5), q_power(5), to_poly(q**5 * (q - 1)))
    for n in range(1, 6):
        for k in range(1, 6):
            assert not d.residual(n, k)


def test_derive_constant_two():
    d = derive_from_constant_s("2", 1)
    assert d.u == to_poly(qint(2) - 2 * qint(1)) == Q - 1
    expected = to_poly(qint(1) * (1 - 2 * qint(2) + qint(2) ** 2))
    assert d.residual(2, 2) == expected == q_power(2)


def test_derive_reproduces_mixed3_coefficients():
    for m in range(1, 26):
        d = derive_from_constant_s("1", m)
        _, t, u, v = MIXED3.coefficients(m)
        assert (d.t, d.u, d.v) == (t, u, v)


@pytest.mark.parametrize("a", ["0", "2", "-1", "1/2", "3/2"])
def test_derive_nonunit_residual(a):
    for m in range(1, 11):
        d = derive_from_constant_s(a, m)
        assert d.residual(2, 2)
        # the closed-form residual is exactly what the rule misses by
        for n, k in [(1, 1), (2, 2), (3, 1), (2, 4)]:
            assert d.rule_value(n, k) - q_integer(m + n + k) == d.residual(n, k)


def test_derive_rejects_non_constant():
    with pytest.raises(PreconditionViolated):
        derive_from_constant_s("q", 1)


# -- degree obstruction ---------------------------------------------------


def _oracle_degree(s_deg, m, n, k):
    # deg u_m = deg s_m + m - 1 once deg s_m > 2; the v [n][k] term dominates
    return s_deg + (m - 1) + (n - 1) + (k - 1)


@pytest.mark.parametrize("s, s_deg", [("q^3", 3), ("q^4", 4), ("q^3+q", 3), ("2*q^3", 3), ("q^5", 5)])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_degree_obstruction_finds_witness(s, s_deg, m):
    w = degree_obstruction(s, m, 4)
    assert w is not None
    assert m < w.n + w.k - 1
    assert w.lhs - w.rhs
    assert w.rhs == q_integer(m + w.n + w.k)
    assert w.lhs.degree() == _oracle_degree(s_deg, m, w.n, w.k) > w.rhs.degree()


def test_degree_obstruction_example_values():
    w = degree_obstruction("q^5", 2, 4)
    assert w is not None and w.lhs.degree() > w.rhs.degree()
    assert (w.n, w.k) == (2, 2)


def test_degree_obstruction_witness_order_is_lexicographic():
    # the forced coefficients satisfy every (1, k) case, so (2, 2) is the first candidate
    w = degree_obstruction("q^3", 1, 4)
    assert (w.n, w.k) == (2, 2)


def test_degree_obstruction_preconditions():
    with pytest.raises(PreconditionViolated):
        degree_obstruction("1", 1, 4)
    with pytest.raises(PreconditionViolated):
        degree_obstruction("q^2 + q", 1, 4)
    with pytest.raises(PreconditionViolated):
        degree_obstruction("q^3", 1, 1)
