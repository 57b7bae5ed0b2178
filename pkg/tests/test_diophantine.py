import math

import pytest
from hypothesis import given, settings, strategies as st

from nfcert import diophantine as dio
from nfcert.arith import is_prime
from nfcert.lucas import make_pair, terms, LucasError


def brute_solve_f(two_m, target, radius):
    out = []
    for x in range(-radius, radius + 1):
        for y in range(-radius, radius + 1):
            if dio.eval_f(two_m, x, y) == target:
                out.append((x, y))
    return tuple(sorted(out))


def brute_solve_c4(sign, ell, radius):
    out = []
    for x in range(-radius, radius + 1):
        for y in range(-radius, radius + 1):
            if y**4 + sign * 3 * x * x * y * y + x**4 == ell:
                out.append((x, y))
    return tuple(sorted(out))


def test_f_poly_small():
    assert dio.f_poly(2).coeff_dict() == {(0, 1): 1, (1, 0): -1}
    assert dio.f_poly(4).coeff_dict() == {(0, 2): 1, (1, 1): -3, (2, 0): 1}
    assert dio.f_poly(6).coeff_dict() == {(0, 3): 1, (1, 2): -5, (2, 1): 6, (3, 0): -1}
    assert dio.f_poly(6).evaluate(1, 4) == 7
    with pytest.raises(dio.SolveError):
        dio.f_poly(5)


@given(st.integers(1, 24), st.integers(-9, 9), st.integers(-9, 9))
def test_eval_f_matches_polynomial(m, x, y):
    assert dio.eval_f(2 * m, x, y) == dio.f_poly(2 * m).evaluate(x, y)


@given(st.integers(1, 8), st.integers(-9, 9).filter(lambda v: v != 0), st.integers(1, 9))
def test_f_equals_lucas_term(m, x0, a):
    """F_2m evaluated at (norm, trace^2) is the (2m+1)-st sequence term."""
    if math.gcd(a, x0) != 1:
        return
    try:
        pair = make_pair(a, x0)
    except LucasError:
        return
    assert dio.eval_f(2 * m, x0, a * a) == terms(pair, 2 * m + 1)[2 * m]


@given(st.integers(1, 10), st.integers(-20, 20), st.integers(-20, 20))
def test_f_sign_symmetry(m, x, y):
    assert dio.eval_f(2 * m, -x, -y) == (-1) ** m * dio.eval_f(2 * m, x, y)


@pytest.mark.parametrize("two_m,target", [(6, 7), (6, -7), (10, 23), (12, 13), (12, -13), (18, 37)])
def test_solve_f_matches_bruteforce_small_box(two_m, target):
    got = dio.solve_f(two_m, target, 64)
    assert got.pairs == brute_solve_f(two_m, target, 64)


def test_solve_f_examples():
    assert dio.solve_f(6, 7, 64).pairs == ((-3, -5), (1, 4), (2, 1))
    assert dio.solve_f(6, -7, 64).pairs == ((-2, -1), (-1, -4), (3, 5))
    assert dio.solve_f(12, -13, 64).pairs == ()
    assert dio.solve_f(10, 43, 512).pairs == ((-3, -5), (2, 5))
    assert dio.solve_f(10, 43, 512).completeness == "conditional-grh"
    assert dio.solve_f(6, 7, 512).completeness == "table-certified"
    assert dio.solve_f(6, 49, 512).completeness == "proven-within-radius"


def test_square_filter():
    sols = dio.solve_f(6, 7, 512)
    filtered = dio.square_filter(sols, 3, 1)
    assert filtered.pairs == ()
    # synthetic set exercising the prime-power test
    s = dio.SolutionSet("t", 1, ((4, 1), (9, 4), (-9, 4), (3, 4), (25, 3)), "proven-exact")
    assert dio.square_filter(s, 3, 1).pairs == ((4, 1), (9, 4), (25, 3))[:2]  # 25 has Y=3 nonsquare
    assert dio.square_filter(s, 3, -1).pairs == ((-9, 4),)
    assert dio.square_filter(s, 2, 1).pairs == ((3, 4),)


def test_solve_c2():
    assert dio.solve_c2(-1, 5).pairs == tuple(sorted({(1, 2), (1, -2), (-1, 2), (-1, -2),
                                                      (2, 1), (2, -1), (-2, 1), (-2, -1)}))
    assert dio.solve_c2(1, 7).pairs == tuple(sorted({(3, 4), (3, -4), (-3, 4), (-3, -4)}))
    assert dio.solve_c2(-1, 7).pairs == ()
    assert dio.solve_c2(-1, 5).completeness == "proven-exact"


@given(st.integers(-400, 400).filter(lambda v: v % 2 == 1), st.sampled_from([1, -1]))
def test_solve_c2_matches_bruteforce(ell, sign):
    got = dio.solve_c2(sign, ell).pairs
    bound = abs(ell) + 2
    expect = tuple(sorted((x, y) for x in range(-bound, bound + 1)
                          for y in range(-bound, bound + 1)
                          if y * y == sign * x * x + ell))
    assert got == expect


@pytest.mark.parametrize("sign,ell", [(-1, 5), (-1, -11), (1, 29), (-1, 31), (1, 5), (-1, -79)])
def test_solve_c4_matches_bruteforce(sign, ell):
    got = dio.solve_c4(sign, ell, 40)
    assert got.pairs == brute_solve_c4(sign, ell, 40)


def test_solve_c4_examples():
    assert set(dio.solve_c4(-1, 5).pairs) == {(1, -2), (-1, -2), (2, -1), (-2, -1),
                                              (2, 1), (-2, 1), (1, 2), (-1, 2)}
    assert set(dio.solve_c4(-1, -11).pairs) == {(2, -3), (-2, -3), (3, -2), (-3, -2),
                                                (3, 2), (-3, 2), (2, 3), (-2, 3)}
    assert set(dio.solve_c4(1, 29).pairs) == {(1, -2), (-1, -2), (2, -1), (-2, -1),
                                              (2, 1), (-2, 1), (1, 2), (-1, 2)}
    assert dio.solve_c4(-1, 19).pairs == ()


def test_solve_w2_quartic_examples():
    assert set(dio.solve_w2_quartic(11).pairs) == {(-2, 1), (-2, -1), (5, 1), (5, -1)}
    assert set(dio.solve_w2_quartic(59).pairs) == {(46, 11), (46, -11), (317, 11), (317, -11)}
    assert dio.solve_w2_quartic(-61).pairs == ()
    assert (1385, 23) in dio.solve_w2_quartic(71).pairs


def test_solve_w2_quartic_matches_bruteforce():
    for ell in (11, -19, 29, 41, -25, 5):
        got = [(x, y) for x, y in dio.solve_w2_quartic(ell, 30).pairs if abs(x) <= 900]
        expect = sorted((x, y) for x in range(-900, 901) for y in range(-30, 31)
                        if y**4 - 3 * x * y * y + x * x == ell)
        assert got == expect


def test_every_solution_resubstitutes():
    for (d, target), row in sorted(dio._f_table().items()):
        for x, y in row["pairs"]:
            assert dio.eval_f(d - 1, x, y) == target
    for (sign, ell), pairs in dio._c4_table().items():
        for x, y in pairs:
            assert y**4 + sign * 3 * x * x * y * y + x**4 == ell
    for ell, pairs in dio._w2q_table().items():
        for x, y in pairs:
            assert y**4 - 3 * x * y * y + x * x == ell


def test_table_lookup():
    assert len(dio.table_lookup(3, (7, 13))) == 9
    assert dio.table_lookup(4, (41, -41)) == []
    assert set(dio.table_lookup(8, -19)) == {(5, 2), (5, -2), (7, 2), (7, -2)}
    with pytest.raises(KeyError):
        dio.table_lookup(3, (7, 11))
    with pytest.raises(KeyError):
        dio.table_lookup(8, 13)
    row = dio.table_lookup(1, (1, 2))
    assert [5, -1] in row["defects"]


def test_verify_tables_clean():
    assert dio.verify_tables(f_radius=64, c4_radius=200, w2q_radius=200) == []
