"""Exact integer, rational and polynomial kernel.

Everything here works on Python ints and ``fractions.Fraction``; there is no
floating point anywhere in this module.  Polynomials are dense coefficient
tuples, lowest degree first.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import gcd, isqrt, prod
from typing import Iterable, Sequence

from .errors import BoundaryRootError

__all__ = [
    "Poly",
    "poly_resultant",
    "poly_discriminant",
    "poly_gcd",
    "squarefree_part",
    "sturm_sequence",
    "sturm_root_count",
    "cauchy_bound",
    "real_roots_within",
    "interpolate",
    "power_sums",
    "is_prime",
    "factorize",
    "lucas_power_sum",
    "MR_CERTIFIED_LIMIT",
]


class Poly:
    """Univariate polynomial with exact coefficients (int or Fraction).

    ``Poly([c0, c1, c2])`` is ``c0 + c1*x + c2*x**2``.  Trailing zeros are
    stripped so that equality is value equality; the zero polynomial has an
    empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        # Fractions with denominator 1 collapse to int so hashes/reprs are stable
        self.coeffs = tuple(
            int(a) if isinstance(a, Fraction) and a.denominator == 1 else a for a in c
        )

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def monomial(cls, n: int, coeff=1):
        return cls([0] * n + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            return 0
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            mag = abs(a)
            sign = "-" if a < 0 else "+"
            if i == 0:
                body = str(mag)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def __neg__(self):
        return Poly(-a for a in self.coeffs)

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly((other,))
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly((other,))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(a * other for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Poly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        """Division with remainder over the rationals."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(a) for a in self.coeffs]
        dq = other.degree
        lead = Fraction(other.lc)
        quo = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            if rem[k] == 0:
                continue
            t = rem[k] / lead
            quo[k - dq] = t
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] -= t * b
        return Poly(quo), Poly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError(f"{other} does not divide {self}")
        return q

    def derivative(self) -> "Poly":
        return Poly(i * a for i, a in enumerate(self.coeffs) if i)

    def content(self) -> int:
        """Gcd of the (integer) coefficients, sign taken from the leading one."""
        g = 0
        for a in self.coeffs:
            g = gcd(g, int(a))
        if g and self.lc < 0:
            g = -g
        return g

    def primitive(self) -> "Poly":
        """Clear denominators and content; leading coefficient positive."""
        if not self.coeffs:
            return self
        den = 1
        for a in self.coeffs:
            if isinstance(a, Fraction):
                den = den * a.denominator // gcd(den, a.denominator)
        ints = Poly(int(a * den) for a in self.coeffs)
        g = ints.content()
        return Poly(a // g for a in ints.coeffs)

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly()
        for a in reversed(self.coeffs):
            acc = acc * inner + a
        return acc

    def reverse(self, n: int | None = None) -> "Poly":
        """x^n * p(1/x); n defaults to the degree."""
        if n is None:
            n = self.degree
        c = list(self.coeffs) + [0] * (n + 1 - len(self.coeffs))
        return Poly(reversed(c[: n + 1]))

    def is_integral(self) -> bool:
        return all(isinstance(a, int) for a in self.coeffs)


def _as_poly(f) -> Poly:
    return f if isinstance(f, Poly) else Poly(f)


def _pseudo_rem(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """lc(b)^(deg a - deg b + 1) * a mod b, integers only."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [lb * x for x in r]
        for j, bj in enumerate(b):
            r[shift + j] -= lr * bj
        r.pop()
        while r and r[-1] == 0:
            r.pop()
        e -= 1
    if e:
        f = lb**e
        r = [f * x for x in r]
    return r


def poly_resultant(f, g) -> int:
    """Res(f, g) of two nonzero integer polynomials (Sylvester sign convention).

    Uses the subresultant pseudo-remainder sequence, so every division is
    exact and intermediate coefficients stay bounded.
    """
    f, g = _as_poly(f), _as_poly(g)
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of a zero polynomial")
    if not (f.is_integral() and g.is_integral()):
        raise ValueError("poly_resultant expects integer coefficients")
    if f.degree == 0:
        return f.lc**g.degree
    if g.degree == 0:
        return g.lc**f.degree

    a, b = list(f.coeffs), list(g.coeffs)
    s = 1
    if len(a) < len(b):
        a, b = b, a
        if (len(a) - 1) % 2 and (len(b) - 1) % 2:
            s = -1
    ca = Poly(a).content()
    cb = Poly(b).content()
    a = [x // ca for x in a]
    b = [x // cb for x in b]
    t = ca ** (len(b) - 1) * cb ** (len(a) - 1)
    gg = h = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = _pseudo_rem(a, b)
        if not r:
            return 0
        a = b
        div = gg * h**delta
        b = [x // div for x in r]
        gg = a[-1]
        # h <- h^(1 - delta) * g^delta; exact division once delta >= 1
        if delta >= 1:
            h = gg**delta // h ** (delta - 1)
        if len(b) == 1:
            da = len(a) - 1
            return s * t * (b[0] ** da // h ** (da - 1))


def poly_discriminant(f) -> int:
    """(-1)^(n(n-1)/2) Res(f, f') / lc(f) for deg f = n >= 1."""
    f = _as_poly(f)
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return 1
    fp = f.derivative()
    res = poly_resultant(f, fp)
    q, rem = divmod(res, f.lc)
    assert rem == 0
    return -q if (n * (n - 1) // 2) % 2 else q


def poly_gcd(f, g) -> Poly:
    """Primitive integer gcd of two polynomials over Q (positive lc)."""
    f, g = _as_poly(f), _as_poly(g)
    while not g.is_zero():
        f, g = g, (f % g)
        if not g.is_zero():
            g = g.primitive()
    return f.primitive() if not f.is_zero() else f


def squarefree_part(f) -> Poly:
    f = _as_poly(f)
    if f.degree < 1:
        return f.primitive()
    return f.primitive().exact_div(poly_gcd(f, f.derivative())).primitive()


def sturm_sequence(f: Poly) -> list[Poly]:
    seq = [f, f.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        # positive rescaling keeps the sign pattern and the ints small
        p = r.primitive()
        seq.append(p if r.lc < 0 else -p)
    return [p for p in seq if not p.is_zero()]


def _sign_changes(seq: Sequence[Poly], x) -> int:
    changes, last = 0, 0
    for p in seq:
        v = p(x)
        if v == 0:
            continue
        sgn = 1 if v > 0 else -1
        if last and sgn != last:
            changes += 1
        last = sgn
    return changes


def sturm_root_count(f, lo, hi) -> int:
    """Number of distinct real roots of squarefree ``f`` in the open (lo, hi)."""
    f = _as_poly(f)
    lo, hi = Fraction(lo), Fraction(hi)
    if f.is_zero():
        raise ValueError("zero polynomial")
    if not lo < hi:
        raise ValueError("need lo < hi")
    if f.degree >= 1 and poly_gcd(f, f.derivative()).degree > 0:
        raise ValueError("sturm_root_count needs a squarefree polynomial")
    for end in (lo, hi):
        if f(end) == 0:
            raise BoundaryRootError(end)
    if f.degree < 1:
        return 0
    seq = sturm_sequence(f)
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def cauchy_bound(f) -> Fraction:
    """Every complex root of f has absolute value strictly below this."""
    f = _as_poly(f)
    lead = abs(Fraction(f.lc))
    return 1 + max((abs(Fraction(a)) / lead for a in f.coeffs[:-1]), default=0)


def real_roots_within(f, bound_sq) -> bool:
    """True iff every complex root of f is real with x^2 <= bound_sq.

    Square-root bounds are never floated: the roots of f(x)f(-x), read as a
    polynomial in v = x^2, are tested against the rational bound_sq instead.
    """
    f = _as_poly(f)
    bound_sq = Fraction(bound_sq)
    if f.degree < 1:
        return True
    s = squarefree_part(f)
    m = cauchy_bound(s)
    if sturm_root_count(s, -m, m) != s.degree:
        return False
    even = Poly(s[i] for i in range(0, len(s), 2))
    odd = Poly(s[i] for i in range(1, len(s), 2))
    v_poly = even * even - Poly.x() * odd * odd
    t = squarefree_part(v_poly)
    if t.degree < 1:
        return True
    if t(bound_sq) == 0:
        t = t.exact_div(Poly((-bound_sq, 1))).primitive()
        if t.degree < 1:
            return True
    top = cauchy_bound(t)
    if top <= bound_sq:
        return True
    return sturm_root_count(t, bound_sq, top) == 0


def interpolate(points: Sequence[tuple[int, int]]) -> Poly:
    """Exact Lagrange interpolation through (x, y) pairs."""
    result = Poly()
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        num = Poly((1,))
        den = 1
        for j, (xj, _) in enumerate(points):
            if j != i:
                num = num * Poly((-xj, 1))
                den *= xi - xj
        result = result + num * Fraction(yi, den)
    return result


def power_sums(f, n: int) -> list[int]:
    """p_0..p_n, the power sums of the roots of a monic integer polynomial."""
    f = _as_poly(f)
    d = f.degree
    if f.lc != 1:
        raise ValueError("power_sums needs a monic polynomial")
    # e_k with sign: f = x^d + c_{d-1} x^{d-1} + ... ; Newton: p_k = -k c_{d-k} - sum c_{d-i} p_{k-i}
    c = f.coeffs
    p = [d]
    for k in range(1, n + 1):
        acc = 0
        for i in range(1, min(k, d) + 1):
            ci = c[d - i]
            if i == k:
                acc += k * ci
            else:
                acc += ci * p[k - i]
        p.append(-acc)
    return p


# --- integers -------------------------------------------------------------

# first 13 primes: deterministic Miller-Rabin below 3317044064679887385961981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
MR_CERTIFIED_LIMIT = 3317044064679887385961981
_TRIAL_LIMIT = 1000
_SMALL_PRIMES = [
    p for p in range(2, _TRIAL_LIMIT) if all(p % d for d in range(2, isqrt(p) + 1))
]


def is_prime(n: int) -> bool:
    """Miller-Rabin with the fixed 13-prime witness set.

    Exact below MR_CERTIFIED_LIMIT; above it the answer is a strong
    probable-prime verdict (see ``factorize`` for how that is reported).
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _integer_root(n: int, k: int) -> int:
    lo, hi = 0, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _perfect_power(n: int):
    for k in range(2, n.bit_length() + 1):
        b = _integer_root(n, k)
        if b > 1 and b**k == n:
            return b, k
    return None


def _brent(n: int, seed: int, c: int = 1) -> int:
    """Brent's cycle-finding rho on x -> x^2 + c, started at ``seed``."""
    y, r, q, g = seed % n, 1, 1, 1
    m = 128
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        r *= 2
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return g


def _split(n: int) -> int:
    # fixed x^2 + 1 with restart seeds 1, 2, 3, ...; x^2 + c only as a last resort
    for seed in range(1, 65):
        d = _brent(n, seed)
        if 1 < d < n:
            return d
    c = 2
    while True:
        d = _brent(n, 2, c)
        if 1 < d < n:
            return d
        c += 1


def factorize(n: int) -> Counter:
    """Prime factorization of |n| as a Counter {prime: exponent}.

    Trial division below 1000, then Brent/Pollard rho; every factor is
    checked with Miller-Rabin.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out: Counter = Counter()
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            out[p] += 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m < _TRIAL_LIMIT**2 or is_prime(m):
            # anything below 10^6 left after trial division is prime
            out[m] += 1
            continue
        pp = _perfect_power(m)
        if pp:
            b, k = pp
            stack.extend([b] * k)
            continue
        d = _split(m)
        stack.extend([d, m // d])
    for p in out:
        assert is_prime(p)
    return Counter(dict(sorted(out.items())))


def lucas_power_sum(a, Q, n: int):
    """s_n = alpha1^n + alpha2^n for the roots of x^2 - a x + Q.

    Runs s_{k+1} = a s_k - Q s_{k-1} from s_0 = 2, s_1 = a; works for any
    ring element type supporting + - * with ints (used with field elements).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    prev, cur = 2 + 0 * a, a
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, a * cur - Q * prev
    return cur


def product(values: Iterable[int]) -> int:
    return prod(values, start=1)
