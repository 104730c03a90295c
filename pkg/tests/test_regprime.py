from fractions import Fraction

import pytest

from freybound.arith import is_prime
from freybound.regprime import bernoulli_upto, is_regular


def power_sum_irregular(r):
    """Even k in 2..r-3 with sum_{a<r} a^k = 0 mod r^2, i.e. r | numerator(B_k)."""
    m = r * r
    return [k for k in range(2, r - 2, 2) if sum(pow(a, k, m) for a in range(1, r)) % m == 0]


def test_small_bernoulli_values():
    b = bernoulli_upto(12)
    assert b[:5] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30)]
    assert b[12] == Fraction(-691, 2730)
    assert all(b[k] == 0 for k in range(3, 13, 2))
    with pytest.raises(ValueError):
        bernoulli_upto(-1)


def test_von_staudt_clausen():
    b = bernoulli_upto(60)
    for k in range(2, 61, 2):
        denom = 1
        for q in range(2, k + 2):
            if is_prime(q) and k % (q - 1) == 0:
                denom *= q
        assert b[k].denominator == denom


def test_irregular_primes_below_100():
    irregular = {r: is_regular(r)[1] for r in range(3, 100) if is_prime(r) and not is_regular(r)[0]}
    assert irregular == {37: [32], 59: [44], 67: [58]}


def test_agrees_with_power_sum_oracle():
    for r in range(3, 151):
        if is_prime(r):
            ok, bad = is_regular(r)
            assert bad == power_sum_irregular(r)
            assert ok == (not bad)


def test_691():
    ok, bad = is_regular(691)
    assert not ok and bad == [12, 200] == power_sum_irregular(691)


@pytest.mark.parametrize("r", [1, 2, 4, 9, 15])
def test_rejects_non_odd_primes(r):
    with pytest.raises(ValueError):
        is_regular(r)
