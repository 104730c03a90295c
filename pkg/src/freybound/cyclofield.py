"""Exact arithmetic in K = Q(zeta_r)^+, the maximal totally real subfield.

Elements are integer polynomials in psi = zeta_r + 1/zeta_r reduced modulo
the minimal polynomial of psi.  For prime r, Z[psi] is the full ring of
integers of K; that fact is assumed, not checked.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import gcd

from .arith import (
    Poly,
    interpolate,
    is_prime,
    poly_discriminant,
    poly_resultant,
    power_sums,
    real_roots_within,
)

__all__ = [
    "RealCycloField",
    "NFElem",
    "make_field",
    "nf_add",
    "nf_sub",
    "nf_mul",
    "galois_conjugate",
    "field_norm",
    "char_poly",
    "conjugate_bound_check",
    "hplus_default",
    "residue_degree",
]


def _dickson(n: int) -> Poly:
    """D_n with D_n(x + 1/x) = x^n + x^-n."""
    prev, cur = Poly((2,)), Poly.x()
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, Poly.x() * cur - prev
    return cur


class RealCycloField:
    """Q(zeta_r)^+ with its power basis 1, psi, ..., psi^(g-1)."""

    def __init__(self, r: int):
        if r < 3 or r % 2 == 0 or not is_prime(r):
            raise ValueError(f"r must be an odd prime, got {r}")
        self.r = r
        self.g = (r - 1) // 2
        # Phi_r(x) / x^g = 1 + sum_{k=1..g} (x^k + x^-k)
        m = Poly((1,))
        for k in range(1, self.g + 1):
            m = m + _dickson(k)
        self.m_psi = m
        self.disc = poly_discriminant(m)
        self._conj_images = {}

    def __repr__(self):
        return f"RealCycloField(r={self.r})"

    def __eq__(self, other):
        return isinstance(other, RealCycloField) and other.r == self.r

    def __hash__(self):
        return hash(("RealCycloField", self.r))

    def __reduce__(self):
        return (make_field, (self.r,))

    def reduce(self, p: Poly) -> tuple:
        rem = p % self.m_psi if p.degree >= self.g else p
        return tuple(int(a) for a in rem.coeffs)

    def elem(self, coords) -> "NFElem":
        return NFElem(self, Poly(coords))

    @property
    def psi(self) -> "NFElem":
        return self.elem((0, 1))

    @property
    def one(self) -> "NFElem":
        return self.elem((1,))

    def trace_form(self) -> list[list[int]]:
        """Gram matrix Tr(psi^(i+j)); its determinant is the discriminant."""
        p = power_sums(self.m_psi, 2 * self.g)
        return [[p[i + j] for j in range(self.g)] for i in range(self.g)]

    def conjugation_image(self, a: int) -> Poly:
        """sigma_a(psi) = D_a(psi) reduced modulo m_psi."""
        a %= self.r
        if a == 0:
            raise ValueError("conjugation index must be prime to r")
        a = min(a, self.r - a)
        if a not in self._conj_images:
            self._conj_images[a] = Poly(self.reduce(_dickson(a)))
        return self._conj_images[a]


@lru_cache(maxsize=None)
def make_field(r: int) -> RealCycloField:
    return RealCycloField(r)


class NFElem:
    __slots__ = ("field", "coords")

    def __init__(self, field: RealCycloField, coords):
        self.field = field
        if not isinstance(coords, Poly):
            coords = Poly(coords)
        if coords.degree >= field.g:
            coords = Poly(field.reduce(coords))
        self.coords = coords

    @property
    def vector(self) -> tuple:
        """Coordinates padded to length g (the sort key for deterministic order)."""
        c = self.coords.coeffs
        return tuple(c) + (0,) * (self.field.g - len(c))

    @property
    def is_rational(self) -> bool:
        return self.coords.degree <= 0

    def _coerce(self, other):
        if isinstance(other, NFElem):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, int):
            return NFElem(self.field, Poly((other,)))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return NFElem(self.field, self.coords + other.coords)

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.field, -self.coords)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return NFElem(self.field, self.coords - other.coords)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return NFElem(self.field, Poly(self.field.reduce(self.coords * other.coords)))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = NFElem(self.field, Poly((other,)))
        if not isinstance(other, NFElem):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash((self.field.r, self.coords.coeffs))

    def __repr__(self):
        return f"NFElem(r={self.field.r}, {list(self.vector)})"

    def __str__(self):
        s = str(self.coords)
        return s.replace("x", "psi")


def nf_add(a: NFElem, b: NFElem) -> NFElem:
    return a + b


def nf_sub(a: NFElem, b: NFElem) -> NFElem:
    return a - b


def nf_mul(a: NFElem, b: NFElem) -> NFElem:
    if a.field != b.field:
        raise ValueError("elements of different fields")
    return a * b


def galois_conjugate(e: NFElem, a: int) -> NFElem:
    """Apply sigma_a: psi -> zeta^a + zeta^-a.  sigma_a == sigma_(r-a)."""
    field = e.field
    if gcd(a, field.r) != 1:
        raise ValueError(f"gcd({a}, {field.r}) != 1")
    image = field.conjugation_image(a)
    return NFElem(field, Poly(field.reduce(e.coords.compose(image))))


def conjugates(e: NFElem) -> list[NFElem]:
    """The g conjugates sigma_1(e), ..., sigma_g(e)."""
    return [galois_conjugate(e, a) for a in range(1, e.field.g + 1)]


def _res_with_m(field: RealCycloField, p: Poly) -> int:
    if p.is_zero():
        return 0
    return poly_resultant(field.m_psi, p)


def field_norm(e: NFElem) -> int:
    """N_{K/Q}(e) = Res(m_psi, coords)."""
    return _res_with_m(e.field, e.coords)


def char_poly(e: NFElem) -> Poly:
    """Characteristic polynomial of e over Q: Res_y(m_psi(y), x - A(y)).

    Monic of degree g; evaluated at x = 0..g and interpolated exactly.
    """
    field = e.field
    pts = []
    for x0 in range(field.g + 1):
        pts.append((x0, _res_with_m(field, Poly((x0,)) - e.coords)))
    out = interpolate(pts)
    assert out.is_integral() and out.lc == 1
    return out


def conjugate_bound_check(e: NFElem, bound=None, *, bound_sq=None) -> bool:
    """True iff every real embedding of e lies in [-bound, bound].

    Give either a rational ``bound`` or, for bounds like 2*sqrt(Q), the exact
    square ``bound_sq`` (so |x| <= 2 sqrt(Q) is tested as x^2 <= 4Q).
    """
    if (bound is None) == (bound_sq is None):
        raise ValueError("give exactly one of bound, bound_sq")
    if bound_sq is None:
        bound = Fraction(bound)
        if bound <= 0:
            raise ValueError("bound must be positive")
        bound_sq = bound * bound
    elif bound_sq <= 0:
        raise ValueError("bound must be positive")
    if e.coords.is_zero():
        return True
    return real_roots_within(char_poly(e), bound_sq)


def hplus_default(r: int) -> tuple[int, str]:
    """Class-group exponent of K from the shipped table, with its source note.

    External data: the table is user responsibility and is never verified.
    """
    text = resources.files("freybound").joinpath("data/hplus_table.txt").read_text()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 2)
        if int(parts[0]) == r:
            return int(parts[1]), parts[2] if len(parts) > 2 else ""
    raise KeyError(f"no tabulated class-group exponent for r={r}; pass an override")


def residue_degree(r: int, q: int) -> int:
    """Residue degree of a prime q != r in K: order of q in (Z/r)^* / {+-1}."""
    if q % r == 0:
        raise ValueError("q must differ from r")
    f, x = 1, q % r
    while x not in (1, r - 1):
        x = x * q % r
        f += 1
    return f
