import math

import pytest
from hypothesis import given, settings, strategies as st

from nfcert.arith import factorize, primes_below
from nfcert.lucas import (DefectTableError, LucasError, LucasPair,
                          classify_defect, defect_scan, defective_indices,
                          first_occurrence, has_primitive_divisor, make_pair,
                          odd_defect_filter, primitive_divisors, terms)


def closed_form_term(pair, n):
    """(alpha^n - beta^n)/(alpha - beta) in exact quadratic arithmetic:
    alpha^n = c + d*alpha in the basis (1, alpha), and the term is d."""
    c, d = 1, 0  # alpha^0
    for _ in range(n):
        c, d = -pair.B * d, c + pair.A * d
    return d


def all_valid_pairs(bound):
    out = []
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            try:
                out.append(make_pair(a, b))
            except LucasError:
                continue
    return out


def naive_primitive_divisors(pair, n):
    us = terms(pair, n)
    if us[n - 1] == 0:
        return frozenset()
    excluded = set(factorize(pair.discriminant).primes()) if pair.discriminant else set()
    for k in range(1, n):
        if us[k - 1]:
            excluded |= set(factorize(us[k - 1]).primes())
    return frozenset(set(factorize(us[n - 1]).primes()) - excluded) if abs(us[n - 1]) > 1 else frozenset()


def test_make_pair_examples():
    assert make_pair(1, 2) == LucasPair(1, 2)
    with pytest.raises(LucasError):
        make_pair(2, 4)
    with pytest.raises(LucasError):
        make_pair(1, 1)  # A^2 = B
    with pytest.raises(LucasError):
        make_pair(0, 5)
    with pytest.raises(LucasError):
        make_pair(2, 1)  # A^2 = 4B
    with pytest.raises(LucasError):
        make_pair(5, 0)


def test_terms_examples():
    assert terms(make_pair(1, 2), 7) == [1, 1, -1, -3, -1, 5, 7]
    assert terms(make_pair(2, 11), 5) == [1, 2, -7, -36, 5]
    assert terms(make_pair(4, 7), 2) == [1, 4]


def test_terms_match_closed_form():
    pairs = [make_pair(a, b) for a, b in ((1, 2), (2, 3), (-3, 5), (5, -7), (6, 25), (-4, 9), (7, 2), (2, -9), (9, 10), (-5, 8))]
    for pair in pairs:
        us = terms(pair, 20)
        for n in range(1, 21):
            assert us[n - 1] == closed_form_term(pair, n)


def test_primitive_divisor_examples():
    assert primitive_divisors(make_pair(1, 2), 7) == frozenset()
    assert primitive_divisors(make_pair(1, 2), 6) == frozenset({5})
    assert primitive_divisors(make_pair(1, 2), 5) == frozenset()


@given(st.integers(-12, 12), st.integers(-12, 12), st.integers(3, 14))
def test_primitive_divisors_match_naive(a, b, n):
    try:
        pair = make_pair(a, b)
    except LucasError:
        return
    assert primitive_divisors(pair, n) == naive_primitive_divisors(pair, n)


def test_first_occurrence_examples():
    assert first_occurrence(make_pair(1, 2), 7) == 7
    assert first_occurrence(make_pair(1, 2), 3) == 4
    assert first_occurrence(make_pair(2, 11), 5) == 5
    with pytest.raises(LucasError):
        first_occurrence(make_pair(1, 5), 5)


def test_divisibility_property():
    # d | n implies u_d | u_n, all valid pairs up to 20, n <= 24
    for pair in all_valid_pairs(20):
        us = terms(pair, 24)
        for n in range(1, 25):
            for d in range(1, n):
                if n % d == 0 and us[d - 1] != 0:
                    assert us[n - 1] % us[d - 1] == 0


def test_first_occurrence_structure():
    # ell | disc forces index ell; otherwise the index divides ell -+ 1
    odd_primes = [p for p in primes_below(38) if p > 2]
    for pair in all_valid_pairs(20):
        for ell in odd_primes:
            if pair.B % ell == 0:
                continue
            m = first_occurrence(pair, ell)
            assert m is not None
            if m == 2:
                continue
            if pair.discriminant % ell == 0:
                assert m == ell
            else:
                assert (ell - 1) % m == 0 or (ell + 1) % m == 0


def sporadic_indices(pair, n_max=30):
    return {r.index for r in defect_scan(pair, n_max) if r.classification == "sporadic"}


def test_defect_scan_table_rows():
    assert defective_indices(make_pair(1, 2), 30) == {3, 5, 7, 8, 12, 13, 18, 30}
    # index 3 of (1, 2) belongs to the parametric norm = trace^2 + 1 family
    assert sporadic_indices(make_pair(1, 2)) == {5, 7, 8, 12, 13, 18, 30}
    # (1, 3) additionally picks up the parametric index 6 (u_6 = 16)
    assert sporadic_indices(make_pair(1, 3)) == {5, 12}
    assert defective_indices(make_pair(1, 3), 12) == {5, 6, 12}
    us = terms(make_pair(1, 3), 12)
    assert us[11] == 160
    # (5, 7): index 10 is the sporadic entry; index 6 (u_6 = 360, all of whose
    # primes divide earlier terms or the discriminant) is parametric
    assert sporadic_indices(make_pair(5, 7)) == {10}
    assert defective_indices(make_pair(5, 7), 9) == {6}
    assert naive_primitive_divisors(make_pair(5, 7), 6) == frozenset()


def test_defect_scan_rejects_large_bound():
    with pytest.raises(LucasError):
        defect_scan(make_pair(1, 2), 65)


def test_beyond_thirty_never_defective_sampled():
    import random

    rng = random.Random(20240801)
    pairs = all_valid_pairs(20)
    for pair in rng.sample(pairs, 100):
        us = terms(pair, 40)
        for n in range(31, 41):
            assert has_primitive_divisor(pair, n, us)


def test_classification_kinds():
    rec = classify_defect(make_pair(2, 5), 3, terms(make_pair(2, 5), 3)[2])
    assert rec.classification == "parametric" and rec.row == 1
    rec = classify_defect(make_pair(2, 3), 10, terms(make_pair(2, 3), 10)[9])
    assert rec.classification == "sporadic"
    rec = classify_defect(make_pair(2, 7), 3, -3)
    assert rec.classification == "parametric" and rec.row == 2


def test_defect_values_flip_with_trace_sign():
    plus = {r.index: r.value for r in defect_scan(make_pair(1, 2), 30) if r.classification != "none"}
    minus = {r.index: r.value for r in defect_scan(make_pair(-1, 2), 30) if r.classification != "none"}
    assert set(plus) == set(minus)
    for n, v in plus.items():
        assert minus[n] == (-1) ** (n + 1) * v


def test_odd_defect_filter():
    rec = odd_defect_filter(2, make_pair(2, 3), 3)
    assert rec is not None and rec.classification == "sporadic"
    rec = odd_defect_filter(2, make_pair(2, 11), 5)
    assert rec is not None
    assert odd_defect_filter(3, make_pair(6, 25), 4) is None
    with pytest.raises(LucasError):
        odd_defect_filter(2, make_pair(3, 4), 4)


@settings(max_examples=40)
@given(st.integers(-20, 20), st.integers(-20, 20))
def test_scan_never_hits_unclassifiable(a, b):
    try:
        pair = make_pair(a, b)
    except LucasError:
        return
    # every computed defect in range classifies against the embedded tables
    defect_scan(pair, 30)
