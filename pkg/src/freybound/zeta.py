"""Naive point counting on hyperelliptic curves and L-polynomial recovery.

Curves are y^2 + h(x) y = f(x) with integer coefficients read modulo the
field characteristic.  Counting is plain exhaustion over x, vectorised with
numpy; the intended scale is at most ~1e7 field evaluations in total.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import Poly, factorize, is_prime, poly_discriminant
from .errors import CostGuardrailError, SingularModelError, WeilBoundError

__all__ = [
    "FiniteField",
    "finite_field",
    "HyperellipticModel",
    "LPolynomial",
    "lockhart_discriminant",
    "check_nonsingular",
    "count_points",
    "l_polynomial",
    "predicted_counts",
    "frobenius_charpoly",
    "match_rm_traces",
    "COUNT_BUDGET",
]

COUNT_BUDGET = 10**7


# --- dense polynomials over F_p, as lists low degree first -------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = [x % p for x in a]
    _trim(a)
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _ppowmod(a, e, m, p):
    result, base = [1], _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _psub(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _pgcd(a, b, p):
    a, b = _trim([x % p for x in a]), _trim([x % p for x in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _is_irreducible(m, p):
    k = len(m) - 1
    x = _pmod([0, 1], m, p)
    xp = x
    for d in range(1, k):
        xp = _ppowmod(xp, p, m, p)
        if len(_pgcd(m, _psub(xp, x, p), p)) - 1 != 0:
            return False
    xp = _ppowmod(xp, p, m, p)
    return not _psub(xp, x, p)


def _smallest_irreducible(p, k):
    # lexicographic on (c_{k-1}, ..., c_0), i.e. ascending integer encoding
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        m = low + [1]
        if _is_irreducible(m, p):
            return m
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    """F_q, q = p^k, elements encoded as ints whose base-p digits are coefficients.

    Multiplication goes through discrete log / antilog tables built from the
    smallest primitive element; both tables are read-only numpy arrays.
    """

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        self.p, self.k, self.q = p, k, p**k
        self.modulus = _smallest_irreducible(p, k)
        self._pw = np.array([p**i for i in range(k)], dtype=np.int64)
        self._build_tables()
        self._trace_basis = self._absolute_trace_basis()

    def __repr__(self):
        return f"FiniteField({self.p}, {self.k})"

    # encoding helpers
    def _poly(self, e: int) -> list:
        return _trim([(e // self.p**i) % self.p for i in range(self.k)])

    def _code(self, a: list) -> int:
        return sum(int(c) * self.p**i for i, c in enumerate(a))

    def digits(self, u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64)
        return (u[..., None] // self._pw) % self.p

    def undigits(self, d: np.ndarray) -> np.ndarray:
        return (d % self.p) @ self._pw

    def _mul_matrix(self, c: int) -> np.ndarray:
        """Matrix of u -> c*u on digit row vectors."""
        rows = []
        cp = self._poly(c)
        for i in range(self.k):
            img = _pmod(_pmul([0] * i + [1], cp, self.p), self.modulus, self.p)
            rows.append(img + [0] * (self.k - len(img)))
        return np.array(rows, dtype=np.int64)

    def _scalar_mul(self, a: int, b: int) -> int:
        return self._code(_pmod(_pmul(self._poly(a), self._poly(b), self.p), self.modulus, self.p))

    def _scalar_pow(self, a: int, e: int) -> int:
        return self._code(_ppowmod(self._poly(a), e, self.modulus, self.p))

    def _build_tables(self):
        q = self.q
        order = q - 1
        if order == 1:
            gen = 1
        else:
            primes = list(factorize(order))
            gen = next(c for c in range(2 if self.k == 1 else self.p, q)
                       if all(self._scalar_pow(c, order // l) != 1 for l in primes))
        self.generator = gen
        exp = np.zeros(order, dtype=np.int64)
        exp[0] = 1
        n = 1
        # doubling: exp[n:2n] = exp[0:n] * gen^n, a linear map on digits
        while n < order:
            m = min(n, order - n)
            mat = self._mul_matrix(self._scalar_pow(gen, n))
            exp[n:n + m] = self.undigits(self.digits(exp[:m]) @ mat)
            n += m
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(order, dtype=np.int64)
        self.exp, self.log = exp, log
        exp.setflags(write=False)
        log.setflags(write=False)

    def _absolute_trace_basis(self) -> np.ndarray:
        out = []
        for i in range(self.k):
            e = [0] * i + [1]
            acc, cur = [], _pmod(e, self.modulus, self.p)
            for _ in range(self.k):
                acc = _trim([((acc[j] if j < len(acc) else 0) + (cur[j] if j < len(cur) else 0)) % self.p
                             for j in range(max(len(acc), len(cur)))])
                cur = _ppowmod(cur, self.p, self.modulus, self.p)
            assert len(acc) <= 1
            out.append(acc[0] if acc else 0)
        return np.array(out, dtype=np.int64)

    # vectorised arithmetic on encoded elements
    def elements(self, start: int = 0, stop: int | None = None) -> np.ndarray:
        return np.arange(start, self.q if stop is None else stop, dtype=np.int64)

    def const(self, c: int) -> int:
        return c % self.p

    def add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self.undigits(self.digits(a) + self.digits(b))

    def neg(self, a):
        if self.p == 2:
            return np.asarray(a)
        return self.undigits(-self.digits(a))

    def mul(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        idx = (self.log[a] + self.log[b]) % (self.q - 1)
        return np.where(nz, self.exp[idx], 0)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of 0")
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def chi(self, a) -> np.ndarray:
        """Quadratic character, chi(0) = 0 (odd characteristic only)."""
        a = np.asarray(a, dtype=np.int64)
        sign = np.where(self.log[a] % 2 == 0, 1, -1)
        return np.where(a == 0, 0, sign)

    def trace(self, a) -> np.ndarray:
        """Absolute trace F_q -> F_p (linear on the digit vector)."""
        return (self.digits(a) @ self._trace_basis) % self.p

    def evaluate(self, coeffs, xs) -> np.ndarray:
        """Evaluate an F_p-coefficient polynomial at encoded points."""
        xs = np.asarray(xs, dtype=np.int64)
        acc = np.zeros_like(xs)
        for c in reversed(list(coeffs)):
            acc = self.add(self.mul(acc, xs), np.full_like(xs, self.const(c)))
        return acc


@lru_cache(maxsize=32)
def finite_field(p: int, k: int = 1) -> FiniteField:
    return FiniteField(p, k)


@dataclass(frozen=True)
class HyperellipticModel:
    """y^2 + h(x) y = f(x) of the given genus.

    ``points_at_infinity_rule`` is "auto" (read off the smooth model at
    infinity) or an explicit count 0, 1 or 2 declared by the caller.
    """

    h: Poly
    f: Poly
    genus: int
    points_at_infinity_rule: str = "auto"

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be >= 1")
        if self.f.degree not in (2 * self.genus + 1, 2 * self.genus + 2):
            raise ValueError(f"deg f must be {2 * self.genus + 1} or {2 * self.genus + 2}")
        if self.h.degree > self.genus + 1:
            raise ValueError(f"deg h must be <= {self.genus + 1}")
        if self.points_at_infinity_rule not in ("auto", "0", "1", "2"):
            raise ValueError(f"unknown infinity rule {self.points_at_infinity_rule!r}")

    def __str__(self):
        lhs = "y^2" if self.h.is_zero() else f"y^2 + ({self.h})*y"
        return f"{lhs} = {self.f}"


def lockhart_discriminant(model: HyperellipticModel) -> int:
    """2^(-4(g+1)) disc_{2g+2}(4f + h^2), an integer polynomial in the coefficients.

    Reduction mod p is smooth (including at infinity) iff p does not divide it.
    """
    g = model.genus
    F = model.f * 4 + model.h * model.h
    d = 2 * g + 2
    if F.degree == d:
        disc = poly_discriminant(F)
    elif F.degree == d - 1:
        disc = F.lc**2 * poly_discriminant(F)
    else:
        disc = 0
    scale = 2 ** (4 * (g + 1))
    assert disc % scale == 0
    return disc // scale


def check_nonsingular(model: HyperellipticModel, p: int) -> int:
    disc = lockhart_discriminant(model)
    if disc % p == 0:
        raise SingularModelError(
            f"{model} has singular reduction mod {p}", discriminant=disc, witness=disc % p
        )
    return disc


def _points_at_infinity(model: HyperellipticModel, fld: FiniteField) -> int:
    if model.points_at_infinity_rule != "auto":
        return int(model.points_at_infinity_rule)
    g, p = model.genus, fld.p
    if p != 2:
        F = model.f * 4 + model.h * model.h
        top = F[2 * g + 2] % p
        if top == 0:
            return 1
        return 1 + int(fld.chi(np.array([fld.const(top)]))[0])
    # Y^2 + h_{g+1} Y = f_{2g+2} over F_q, both constants lie in F_2
    hg, fg = model.h[g + 1] % 2, model.f[2 * g + 2] % 2
    if hg == 0:
        return 1
    return 2 if (fld.k * fg) % 2 == 0 else 0


def _count_chunk(model, fld: FiniteField, xs: np.ndarray) -> int:
    p = fld.p
    if p != 2:
        F = model.f * 4 + model.h * model.h
        vals = fld.evaluate(F.coeffs, xs)
        return int(np.sum(1 + fld.chi(vals)))
    H = fld.evaluate(model.h.coeffs, xs)
    Fv = fld.evaluate(model.f.coeffs, xs)
    zero_h = H == 0
    safe_h = np.where(zero_h, 1, H)
    w = fld.mul(Fv, fld.inv(fld.mul(safe_h, safe_h)))
    tr = fld.trace(w)
    per_x = np.where(zero_h, 1, np.where(tr == 0, 2, 0))
    return int(np.sum(per_x))


def count_points(model: HyperellipticModel, fld: FiniteField, workers: int = 1,
                 chunk: int = 1 << 18) -> int:
    """Points on the smooth projective model over ``fld``.

    Raises SingularModelError when the reduction is singular.  The x-range is
    split into chunks whose partial counts are summed (order independent).
    """
    check_nonsingular(model, fld.p)
    xs = fld.elements()
    pieces = [xs[i:i + chunk] for i in range(0, fld.q, chunk)]
    if workers > 1 and len(pieces) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            affine = sum(pool.map(lambda c: _count_chunk(model, fld, c), pieces))
    else:
        affine = sum(_count_chunk(model, fld, c) for c in pieces)
    return affine + _points_at_infinity(model, fld)


@dataclass(frozen=True)
class LPolynomial:
    """Numerator of the zeta function, L(T) = 1 + a_1 T + ... + q^g T^(2g)."""

    q: int
    g: int
    poly: Poly

    def __post_init__(self):
        P, g, q = self.poly, self.g, self.q
        if P.degree != 2 * g or P[0] != 1:
            raise ValueError("L-polynomial must have degree 2g and constant term 1")
        for i in range(g + 1):
            if P[2 * g - i] != q ** (g - i) * P[i]:
                raise ValueError("L-polynomial violates the functional equation")

    def weil_trace_ok(self) -> bool:
        # |a_1| <= 2 g sqrt(q), squared
        return self.poly[1] ** 2 <= 4 * self.g**2 * self.q

    def records(self) -> list[dict]:
        return [{"kind": "lpoly", "q": str(self.q), "g": self.g,
                 "coeffs": [str(c) for c in self.poly.coeffs]}]


def _coeffs_from_power_sums(psums: list[int], g: int) -> list[int]:
    """a_1..a_g of prod(1 - alpha T) from power sums p_1..p_g (exact)."""
    a = [1]
    for k in range(1, g + 1):
        acc = psums[k - 1] + sum(a[i] * psums[k - i - 1] for i in range(1, k))
        if acc % k:
            raise WeilBoundError(f"non-integral L-coefficient at degree {k}")
        a.append(-acc // k)
    return a


def l_polynomial(model: HyperellipticModel, base: FiniteField, workers: int = 1,
                 budget: int = COUNT_BUDGET) -> LPolynomial:
    """L-polynomial over ``base`` from naive counts over F_q, ..., F_(q^g)."""
    g, q = model.genus, base.q
    cost = sum(q**j for j in range(1, g + 1))
    if cost > budget:
        raise CostGuardrailError(cost, budget)
    check_nonsingular(model, base.p)
    counts = [count_points(model, finite_field(base.p, base.k * j), workers) for j in range(1, g + 1)]
    psums = [q**j + 1 - n for j, n in enumerate(counts, start=1)]
    a = _coeffs_from_power_sums(psums, g)
    full = a + [q ** (g - i) * a[i] for i in range(g - 1, -1, -1)]
    try:
        L = LPolynomial(q, g, Poly(full))
    except ValueError as exc:
        raise WeilBoundError(str(exc)) from exc
    if not L.weil_trace_ok():
        raise WeilBoundError(f"|a_1| = {abs(full[1])} exceeds 2g sqrt(q); re-check nonsingularity")
    from .weil import is_weil_polynomial

    if not is_weil_polynomial(frobenius_charpoly(L), q):
        raise WeilBoundError("Frobenius roots off the circle |x| = sqrt(q); re-check nonsingularity")
    return L


def predicted_counts(L: LPolynomial, m: int) -> list[int]:
    """N_1..N_m implied by L, from the power sums p_k = -k a_k - sum a_i p_(k-i)."""
    a = [L.poly[i] for i in range(2 * L.g + 1)]
    psums = []
    for k in range(1, m + 1):
        ak = a[k] if k < len(a) else 0
        acc = -k * ak - sum((a[i] if i < len(a) else 0) * psums[k - i - 1] for i in range(1, k))
        psums.append(acc)
    return [L.q**k + 1 - s for k, s in enumerate(psums, start=1)]


def frobenius_charpoly(L: LPolynomial) -> Poly:
    """x^(2g) L(1/x), the monic characteristic polynomial of Frobenius."""
    return L.poly.reverse(2 * L.g)


def match_rm_traces(L: LPolynomial, candidates) -> list:
    """Candidates a whose trace_charpoly(a, Q) equals the Frobenius charpoly.

    Galois-conjugate candidates give the same product and are all returned.
    """
    from .weil import trace_charpoly

    if not len(candidates):
        return []
    if candidates.Q != L.q:
        raise ValueError(f"candidate Q={candidates.Q} does not match q={L.q}")
    want_g = 1 if candidates.r is None else (candidates.r - 1) // 2
    if L.g != want_g:
        raise ValueError(f"genus {L.g} does not match trace degree {want_g}")
    target = frobenius_charpoly(L)
    return [a for a in candidates.traces if trace_charpoly(a, L.q) == target]
