import math
from fractions import Fraction as F

import pytest

from nfcert.arith import primes_below
from nfcert.elliptic import (CurveError, CurveQ, a_E, a_lambda, bad_primes,
                             count_points, gamma_sign, integral_model,
                             torsion_congruence)
from nfcert.newform import SINGULAR_LAMBDAS, lambda_series, prime_power_coeff


def brute_count(curve, p):
    """Oracle: count affine solutions of y^2 = f(x) by double enumeration."""
    total = 1  # point at infinity
    for x in range(p):
        fx = (x**3 + curve.a2 * x * x + curve.a4 * x + curve.a6) % p
        for y in range(p):
            if y * y % p == fx:
                total += 1
    return total


def test_integral_model_examples():
    assert integral_model(F(8)).curve == CurveQ(-9, -9, 81, frozenset({2}))
    assert integral_model(F(1)).curve == CurveQ(-4, -8, 32, frozenset({2}))
    assert integral_model(F(-4)).curve == CurveQ(-9, 27, -243, frozenset({2}))
    with pytest.raises(CurveError):
        integral_model(F(0))
    with pytest.raises(CurveError):
        integral_model(F(-1))


def test_count_points_examples():
    assert count_points(integral_model(F(8)).curve, 5) == 8
    assert count_points(CurveQ(0, 0, 1), 5) == 6
    assert a_E(integral_model(F(8)).curve, 5) == -2
    assert a_E(CurveQ(0, 0, 1), 5) == 0


def test_count_points_matches_bruteforce():
    curves = [CurveQ(0, 0, 1), CurveQ(0, -1, 0), CurveQ(1, -3, 3), integral_model(F(8)).curve]
    for curve in curves:
        for p in primes_below(60):
            if p == 2 or curve.cubic_disc() % p == 0:
                continue
            assert count_points(curve, p) == brute_count(curve, p)


def test_count_points_rejections():
    with pytest.raises(CurveError):
        count_points(CurveQ(0, 0, 1), 4)
    with pytest.raises(CurveError):
        count_points(CurveQ(0, 0, 1), 3)  # disc divisible by 3


def test_hasse_bound_everywhere():
    for lam in SINGULAR_LAMBDAS:
        lc = integral_model(lam)
        for p in primes_below(200):
            if p in lc.bad_primes:
                continue
            assert a_E(lc.curve, p) ** 2 <= 4 * p


def test_gamma_examples():
    assert gamma_sign(F(8), 5) == 1
    assert gamma_sign(F(-4), 7) == 1
    # lambda + 1 a square rational: always +1
    for p in (5, 7, 11, 13):
        assert gamma_sign(F(8), p) == 1


def test_bad_primes():
    assert bad_primes(F(8)) == frozenset({2, 3})
    assert bad_primes(F(1, 8)) == frozenset({2, 3})
    assert bad_primes(F(-64)) == frozenset({2, 3, 7})
    assert bad_primes(F(1)) == frozenset({2})


def test_a_lambda_examples():
    assert a_lambda(F(8), 5) == -6
    with pytest.raises(CurveError):
        a_lambda(F(8), 3)
    for p in primes_below(100):
        if p in bad_primes(F(1)):
            continue
        v = a_lambda(F(1), p)
        assert v % 2 == 0 and abs(v) <= 2 * p


def test_modularity_bridge_all_lambdas():
    """Point-count coefficients equal the expansion coefficients, p < 200."""
    for lam in SINGULAR_LAMBDAS:
        series = lambda_series(lam, 200)
        lc = integral_model(lam)
        for p in primes_below(200):
            if p in lc.bad_primes:
                continue
            assert a_lambda(lam, p) == series.a(p), (lam, p)


def test_parity_pattern():
    """a(p^d) odd exactly at even d, for good p < 100 and d <= 6."""
    for lam in SINGULAR_LAMBDAS:
        lc = integral_model(lam)
        for p in primes_below(100):
            if p in lc.bad_primes:
                continue
            a = a_lambda(lam, p)
            assert a % 2 == 0
            for d in range(7):
                v = prime_power_coeff(a, 1, 3, p, d)
                assert (v % 2 == 1) == (d % 2 == 0), (lam, p, d)


def test_torsion_congruence():
    curve = CurveQ(0, 0, 1, torsion=frozenset({2, 3}))  # (2, 3) is a 3-torsion point
    lhs, rhs, ok = torsion_congruence(curve, 3, 5, 1)
    assert ok and lhs == rhs == 0
    lhs, rhs, ok = torsion_congruence(curve, 3, 7, 2)
    assert ok and rhs == (1 + 7 + 49) % 3
    with pytest.raises(CurveError):
        torsion_congruence(curve, 3, 3, 1)
    with pytest.raises(CurveError):
        torsion_congruence(CurveQ(0, 0, 1), 3, 5, 1)  # undeclared torsion


def test_torsion_divides_counts():
    curve = CurveQ(0, 0, 1, torsion=frozenset({2, 3}))
    for p in primes_below(200):
        if p in (2, 3) or curve.cubic_disc() % p == 0:
            continue
        assert count_points(curve, p) % 3 == 0
