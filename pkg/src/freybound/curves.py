"""Built-in elliptic curves over Q for the soundness smoke test.

Each curve has good reduction at 2 and a rational 5-isogeny.  The 11a
isogeny class is semistable; the twists by d = 1 (mod 4) keep good
reduction at 2 and have inertial exponent 2 everywhere.  No 7-isogenous
curve is listed: for a quadratic twist of a semistable curve a rational
7-isogeny forces a_2 = +-(1 + 2) (mod 7), impossible with |a_2| <= 2.
"""

from __future__ import annotations

__all__ = ["SMOKE_CURVES", "weierstrass_discriminant", "weierstrass_ap"]

# (label, [a1, a2, a3, a4, a6], isogeny prime)
SMOKE_CURVES = [
    ("11a1", (0, -1, 1, -10, -20), 5),
    ("11a2", (0, -1, 1, -7820, -263580), 5),
    ("11a3", (0, -1, 1, 0, 0), 5),
    ("11a1 twist -3", (0, 3, 1, -90, 533), 5),
    ("11a1 twist 13", (0, -13, 1, -1690, -43391), 5),
    ("11a1 twist -7", (0, 7, 1, -490, 6774), 5),
    ("11a1 twist -11", (0, 11, 1, -1210, 26287), 5),
    ("11a1 twist 17", (0, -17, 1, -2890, -97032), 5),
]


def weierstrass_discriminant(ainvs) -> int:
    a1, a2, a3, a4, a6 = ainvs
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def weierstrass_ap(ainvs, p: int) -> int:
    """p + 1 - #E(F_p) by brute force over all affine (x, y)."""
    a1, a2, a3, a4, a6 = ainvs
    affine = sum(
        1
        for x in range(p)
        for y in range(p)
        if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % p == 0
    )
    return p - affine
