import math
from math import gcd

import pytest

from smoothsum import make_prime_set
from smoothsum.bounds import (LIMITATION, count_smooth_bound_check, empirical_report,
                              eval_bounds, greedy_bound_eval, greedy_comparison,
                              lambda_lower_sample, representable_count_signed,
                              sieve_count_coprime)
from smoothsum.carmichael import carmichael_lambda, factorize

from oracles import smooth_by_stripping


def rel(a, b):
    return abs(a - b) <= 1e-12 * max(abs(a), abs(b))


def test_eval_bounds_substitution():
    r = eval_bounds(2, 2, 1.0, {"c": 1.0, "C": 1.0})
    assert rel(r.entry("lower_F").log_bound, 2 * math.log(2))
    assert rel(r.entry("upper_F").log_bound, 8 * math.log(4))
    assert rel(r.entry("upper_F_pm_large_k").log_bound, 8 * math.log(4))


def test_eval_bounds_ordering_and_huge():
    r = eval_bounds(5, 3, 0.5, {"C_pm": 16})
    assert r.entry("upper_F_pm").log_bound > r.entry("upper_F").log_bound
    r = eval_bounds(500_000, 2, 1.0, {"C_pm": 16})
    for e in r.entries:
        assert math.isfinite(e.log_bound)
    assert rel(r.entry("upper_F_pm").loglog_bound, 16 * math.log(10**6))
    r = eval_bounds(500_000, 2, 1.0, {"C_pm": 80})
    assert r.entry("upper_F_pm").loglog_bound == pytest.approx(80 * math.log(10**6))


def test_eval_bounds_empirical_margins():
    r = eval_bounds(2, 2, 1.0, F=23, F_pm=103)
    low = r.entry("lower_F")
    assert low.holds and rel(low.margin, math.log(23) - 2 * math.log(2))
    assert r.entry("upper_F").holds
    assert r.limitation == LIMITATION


def test_eval_bounds_rejects():
    with pytest.raises(ValueError):
        eval_bounds(1, 2, 1.0)
    with pytest.raises(ValueError):
        eval_bounds(2, 2, 0)


def test_greedy_bound_eval():
    n = math.exp(math.e)
    assert rel(greedy_bound_eval(n, 1.0, 3.0), 2 * math.e + math.sqrt(math.e) / math.log(3))
    vals = [greedy_bound_eval(10**e, 1.0, 2.0) for e in range(3, 30)]
    assert vals == sorted(vals)


def test_greedy_comparison(P23):
    rows, fit = greedy_comparison(P23, [10**3, 10**4, 10**5, 10**6])
    assert all(r["greedy_length"] < 2 * math.log(r["n"]) / math.log(math.log(r["n"]))
               for r in rows)
    assert fit > 0


def test_count_smooth_bound(P23):
    rows, need = count_smooth_bound_check(P23, [10], C6=3)
    assert rows[0]["count"] == 8
    assert rows[0]["bound"] == pytest.approx((3 * math.log(10)) ** 2)
    assert rows[0]["holds"]
    rows, need = count_smooth_bound_check(P23, [10**e for e in range(1, 7)])
    assert need == max(((len(smooth_by_stripping([2, 3], r["n"])) + 1) ** 0.5) / math.log(r["n"])
                       for r in rows)


@pytest.mark.parametrize("primes,N,expect", [([2, 3], 12, 4), ([2, 5], 10, 4), ([2, 3], 10**4, 3333)])
def test_sieve_examples(primes, N, expect):
    P = make_prime_set(primes)
    r = sieve_count_coprime(P, N)
    prod = math.prod(primes)
    assert r["count"] == expect == sum(1 for n in range(1, N + 1) if gcd(n, prod) == 1)
    assert r["holds"]


def test_sieve_crude_bound_value(P23):
    assert sieve_count_coprime(P23, 12)["crude_bound"] == -1


def test_sieve_bound_always_holds():
    for primes in ([2, 3], [2, 3, 5, 7], [5, 7, 11]):
        P = make_prime_set(primes)
        for N in range(1, 3000, 37):
            assert sieve_count_coprime(P, N)["holds"]


def test_representable_count_k1(P23):
    r = representable_count_signed(P23, 1, 100)
    assert r["count"] == 1
    assert r["log_bound"] == pytest.approx(math.log(2 * 2 * (3 * math.log(100)) ** 2))


def test_representable_count_k2_brute(P23):
    N = 2000
    A = smooth_by_stripping([2, 3], N * N)
    got = set()
    for a in A:
        for b in [0] + A:
            for v in (a + b, a - b, b - a):
                if 0 < v <= N and v % 2 and v % 3:
                    got.add(v)
    r = representable_count_signed(P23, 2, N)
    assert r["count"] == len(got) and r["holds"]


def test_lambda_lower_sample():
    r = lambda_lower_sample(2000)
    assert r["statistic"] > 0 and math.isfinite(r["statistic"])
    m = r["argmin"]
    assert carmichael_lambda(m) == r["lambda"] and r["factorization"] == str(factorize(m))


def test_empirical_report_small(P23):
    rep = empirical_report(P23, k_max=3, N_limit=2000, signed_k_max=3)
    assert rep["F"] == [5, 23, 431]
    assert [x["value"] for x in rep["F_pm"]] == [5, 103, None]
    assert rep["limitation"] == LIMITATION
    assert set(rep["fitted_c"]) == {2, 3}
