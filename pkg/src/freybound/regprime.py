"""Regularity of a prime via Kummer's criterion on Bernoulli numerators."""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .arith import is_prime

__all__ = ["bernoulli_upto", "is_regular"]

_TABLE: list[Fraction] = [Fraction(1)]


def bernoulli_upto(n: int) -> list[Fraction]:
    """B_0..B_n exactly, convention B_1 = -1/2.

    Uses sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1; the table is extended
    incrementally and shared between calls.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    for m in range(len(_TABLE), n + 1):
        s = sum((comb(m + 1, j) * b for j, b in enumerate(_TABLE) if b), Fraction(0))
        _TABLE.append(-s / (m + 1))
    return _TABLE[: n + 1]


def is_regular(r: int) -> tuple[bool, list[int]]:
    """(regular?, irregular indices k) with r | numerator(B_k), k even in 2..r-3."""
    if r < 3 or r % 2 == 0 or not is_prime(r):
        raise ValueError(f"r must be an odd prime, got {r}")
    table = bernoulli_upto(max(r - 3, 0))
    bad = [k for k in range(2, r - 2, 2) if table[k].numerator % r == 0]
    return not bad, bad
