import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from smoothsum import make_prime_set
from smoothsum.errors import ResourceLimitError
from smoothsum.repr_exact import build_min_terms, f_of_k
from smoothsum.repr_signed import (EvertseTuple, SignedReach, check_evertse_conditions,
                                   f_pm_of_k, min_terms_signed, padic_abs, padic_value,
                                   signed_window_distances)

from oracles import smooth_by_stripping


def signed_sums_upto(primes, B, k, lo, hi):
    """{n in [lo, hi]: n is a sum of at most k signed smooth terms <= B}, by brute force."""
    A = smooth_by_stripping(primes, B)
    g = np.array(A + [-a for a in A] + [0], dtype=np.int64)
    dist = {}
    reach = np.array([0], dtype=np.int64)
    for j in range(1, k + 1):
        reach = np.unique((reach[:, None] + g[None, :]).ravel())
        for v in reach[(reach >= lo) & (reach <= hi)].tolist():
            dist.setdefault(v, j)
    return dist


def test_min_terms_signed_examples(P23):
    r = min_terms_signed(P23, 5)
    assert r.length == 2 and sum(t.value for t in r.terms) == 5
    r = min_terms_signed(P23, 23, B=100)
    assert r.length == 2 and sum(t.value for t in r.terms) == 23
    assert all(abs(t.value) <= 100 for t in r.terms)
    assert 27 - 4 == 23
    r = min_terms_signed(P23, 6)
    assert r.length == 1 and r.terms[0].term.exponents == (1, 1)


def test_23_two_term_scan():
    A = smooth_by_stripping([2, 3], 100)
    pairs = {a - b for a in A for b in A} | {a + b for a in A for b in A}
    assert 23 in pairs


def test_bfs_optimality_against_exhaustive(P23):
    B = 10**4
    brute = signed_sums_upto([2, 3], B, 3, -200, 200)
    reach = SignedReach(P23, B)
    for n in range(-200, 201):
        if n == 0:
            continue
        r = min_terms_signed(P23, n, B, length_cap=3, reach=reach)
        assert r.length == brute.get(n), n
        if r.length:
            assert sum(t.value for t in r.terms) == n


def test_witness_certification_flag(P23):
    r = min_terms_signed(P23, 103, B=103**2, length_cap=3)
    assert r.length == 3 and r.certified
    r = min_terms_signed(P23, 103, B=1000, length_cap=3)
    assert not r.certified
    r = min_terms_signed(P23, 103, B=103**2, length_cap=2)
    assert r.length is None and not r.certified


def test_domination_over_unsigned(P23):
    N = 3000
    table = build_min_terms(P23, N, 8)
    d = signed_window_distances(P23, N, N * N, 3)
    unsigned = table.min_terms[1:]
    signed = d[1:]
    reached = signed != 0xFF
    assert (signed[reached] <= unsigned[reached]).all()
    # anything unsigned-reachable within 3 terms is signed-reachable within 3
    assert reached[unsigned <= 3].all()


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 500), b1=st.integers(500, 5000), extra=st.integers(0, 10**6))
def test_monotone_in_B(n, b1, extra):
    P = make_prime_set([2, 3])
    r1 = min_terms_signed(P, n, b1, length_cap=4)
    r2 = min_terms_signed(P, n, b1 + extra, length_cap=4)
    if r1.length is not None:
        assert r2.length is not None and r2.length <= r1.length


def test_f_pm_examples(P23):
    assert f_pm_of_k(P23, 1, 1000) == (5, True)
    # exhaustive two-term oracle: smallest n <= 1000 not of the form +-a +-b, |a|,|b| <= 10^6
    A = smooth_by_stripping([2, 3], 10**6)
    reps = set()
    for a in A:
        for b in A + [0]:
            for v in (a + b, a - b, b - a):
                if 0 < v <= 1000:
                    reps.add(v)
    expect = next(n for n in range(1, 1001) if n not in reps)
    assert expect == 103
    assert f_pm_of_k(P23, 2, 1000, 10**6) == (103, True)


def test_f_pm_at_least_f(P23):
    for primes in ([2, 3], [2, 5], [3, 7]):
        P = make_prime_set(primes)
        for k in (1, 2, 3):
            fp = f_pm_of_k(P, k, 5000, 5000**2)
            f = f_of_k(P, k, 5000)
            if fp.value is not None and f is not None:
                assert fp.value >= f
            if f is None:
                assert fp.value is None


def test_f_pm_uncertified_small_B(P23):
    res = f_pm_of_k(P23, 2, 1000, 1000)
    assert not res.certified and res.value <= 103


def test_frontier_cap(P23):
    with pytest.raises(ResourceLimitError):
        min_terms_signed(P23, 4985, 10**12, length_cap=6, frontier_cap=10**6)


def test_padic_value_examples():
    assert padic_value(12, 2) == 3
    assert padic_value(-9, 3) == 1
    assert padic_value(40, 5) == 8
    assert padic_abs(40, 2) == Fraction(1, 8)
    with pytest.raises(ValueError):
        padic_value(0, 2)


def test_evertse_examples():
    v = check_evertse_conditions(EvertseTuple((-5, 2, 3), (2, 3), 1, Fraction(1, 2)))
    assert v.zero_sum and v.no_vanishing_subsum and v.coprime
    assert v.height == 5 and not v.height_bound
    v = check_evertse_conditions(EvertseTuple((1, -1, 5, -5), (2, 3)))
    assert not v.no_vanishing_subsum
    v = check_evertse_conditions(EvertseTuple((2, -2), (2, 3)))
    assert not v.coprime


def test_evertse_height_bound_can_hold():
    # 1 + 8 - 9 = 0: every entry is {2,3}-smooth, height 1 <= 9**(1/2)
    v = check_evertse_conditions(EvertseTuple((1, 8, -9), (2, 3), 1, 0.5))
    assert v.all_hold and v.height == 1


def test_evertse_zero_entry_and_cap():
    v = check_evertse_conditions(EvertseTuple((0, 3, -3), (2,)))
    assert not v.height_bound
    with pytest.raises(ResourceLimitError):
        check_evertse_conditions(EvertseTuple(tuple(range(1, 23)), (2,)))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=2, max_size=9))
def test_vanishing_subsum_matches_brute(xs):
    brute = any(sum(c) == 0 for r in range(1, len(xs))
                for c in itertools.combinations(xs, r))
    v = check_evertse_conditions(EvertseTuple(tuple(xs), (2, 3)))
    assert v.no_vanishing_subsum == (not brute)


def test_vanishing_subsum_big_entries():
    big = 10**30
    v = check_evertse_conditions(EvertseTuple((big, -big, 3, 5, -8), (2,)))
    assert not v.no_vanishing_subsum
