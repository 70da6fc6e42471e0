import dataclasses
from fractions import Fraction

import pytest

from qrules.errors import InitialMismatch, PreconditionViolated, ZeroConstant
from qrules.poly import ONE, ZERO, Poly, q_integer
from qrules.sampling import random_poly, random_zero_spec, stream
from qrules.zero_identity import ZeroIdentitySpec, build_family, evaluate_identity, verify_family, verify_identity

from oracle import q, qint, to_poly


def zero_spec(**kw):
    base = dict(r1k="0", rn1="0", s0=ZERO, t0=ZERO, u0=1, v0=1)
    base.update(kw)
    return ZeroIdentitySpec(**base)


def test_all_zero_spec():
    f = build_family(zero_spec())
    for i in range(1, 6):
        assert f.uprime(i) == f.vprime(i) == q_integer(i)
        assert f.sprime(i) == f.tprime(i) == f.wprime(i) == ZERO
        for j in range(1, 6):
            assert f.rprime(i, j) == ZERO
    assert verify_family(zero_spec(), 5, 5, 5).passed


def test_unit_s_spec():
    f = build_family(zero_spec(s0=ONE))
    for i in range(1, 8):
        assert f.sprime(i) == q_integer(i)
        assert f.tprime(i) == ZERO
        assert f.wprime(i) == -q_integer(i)
    assert evaluate_identity(f, 3, 2, 4) == to_poly(qint(3) * qint(4) * qint(2) - qint(3) * qint(2) * qint(4))
    assert evaluate_identity(f, 3, 2, 4) == ZERO


def test_sign_flip_corruption():
    f = build_family(zero_spec(s0=ONE))
    bad = dataclasses.replace(f, wprime=lambda m: q_integer(m))
    assert evaluate_identity(bad, 1, 1, 1) == Poly.const(2) * q_integer(1) ** 3
    report = verify_identity(bad, 3, 3, 3)
    assert not report.passed and report.failure_at(1, 1, 1) is not None


def test_every_family_vanishes_at_origin():
    rng = stream("test-origin", 0)
    for _ in range(20):
        assert evaluate_identity(build_family(random_zero_spec(rng)), 1, 1, 1) == ZERO


def test_family_formulas_against_oracle():
    # r_{1,k} = q^k, r_{n,1} = q [n]^2; common r = q
    spec = ZeroIdentitySpec("q^k", "q*[n]^2", to_poly(q**2 - 1), to_poly(3 * q), Fraction(2), Fraction(3, 2))
    f = build_family(spec)
    r, s, t, u, v = q, q**2 - 1, 3 * q, 2, sympy_rational(3, 2)
    for n in range(1, 5):
        for k in range(1, 5):
            assert f.rprime(n, k) == to_poly(q**k * qint(n) + q * qint(n) ** 2 * qint(k) - r * qint(n) * qint(k))
        assert f.sprime(n) == to_poly(-(q**n - r * qint(n) - u * s * qint(n)) / u)
        assert f.tprime(n) == to_poly(-(q * qint(n) ** 2 - r * qint(n) - v * t * qint(n)) / v)
        assert f.wprime(n) == to_poly(-(r + u * s + v * t) * qint(n))
    assert verify_family(spec, 8, 8, 8).passed


def sympy_rational(a, b):
    import sympy

    return sympy.Rational(a, b)


def test_structure_of_random_families():
    rng = stream("test-structure", 1)
    for _ in range(10):
        spec = random_zero_spec(rng)
        f = build_family(spec)
        rsv = spec.r_initial + spec.s0.scale(spec.u0) + spec.t0.scale(spec.v0)
        for m in range(1, 13):
            assert f.uprime(m).scale(1 / spec.u0) == q_integer(m)
            assert f.vprime(m).scale(1 / spec.v0) == q_integer(m)
            assert f.wprime(m) + rsv * q_integer(m) == ZERO


def test_random_spec_with_fixed_constants():
    rng = stream("test-fixed", 3)
    spec = random_zero_spec(rng)
    spec = dataclasses.replace(spec, s0=random_poly(rng, 3, 5), t0=random_poly(rng, 3, 5),
                               u0=Fraction(2), v0=Fraction(3, 2))
    assert verify_family(spec, 12, 12, 12).passed


def test_degenerate_reduction():
    f = build_family(zero_spec())
    for m in range(1, 5):
        for n in range(1, 5):
            for k in range(1, 5):
                assert evaluate_identity(f, m, n, k) == ZERO
                assert f.rprime(n, k) * q_integer(m) == ZERO


def test_spec_validation():
    with pytest.raises(ZeroConstant):
        zero_spec(u0=0)
    with pytest.raises(ZeroConstant):
        zero_spec(v0=Fraction(0))
    with pytest.raises(InitialMismatch):
        zero_spec(r1k="q^k", rn1="1")
    with pytest.raises(PreconditionViolated):
        zero_spec(r1k="[n]", rn1="1")
    with pytest.raises(TypeError):
        zero_spec(u0=to_poly(q))
    # agreement is checked only at index 1
    zero_spec(r1k="q^k", rn1="q^(2*n-1)")
