"""Candidate Frobenius trace sets and inertial exponent bounds.

A trace set collects every a = alpha1 + alpha2 with alpha1 * alpha2 = Q and
|alpha_i| = sqrt(Q) in every complex embedding.  Equivalently: a is a totally
real algebraic integer all of whose conjugates lie in [-2 sqrt(Q), 2 sqrt(Q)].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import partial
from math import isqrt, lcm

from .arith import Poly, interpolate, poly_resultant, real_roots_within
from .cyclofield import NFElem, RealCycloField, conjugate_bound_check, make_field
from .parallel import chunked, pmap

__all__ = [
    "WeilTraceSet",
    "enum_rational_traces",
    "enum_field_traces",
    "field_search_box",
    "trace_charpoly",
    "real_weil_polynomial",
    "is_weil_polynomial",
    "gl_exponent",
    "inertial_exponent_bound",
]

ENUMERATED = "enumerated"
CURVE_DERIVED = "curve-derived"


@dataclass
class WeilTraceSet:
    Q: int
    f: int = 1
    mode: str = "rational"  # rational | field | curve-derived
    r: int | None = None
    elements: list = dc_field(default_factory=list)  # (trace, provenance) pairs

    @property
    def traces(self) -> list:
        return [t for t, _ in self.elements]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.traces)

    def __contains__(self, a):
        return a in self.traces

    def restricted(self, keep) -> "WeilTraceSet":
        return WeilTraceSet(self.Q, self.f, self.mode, self.r,
                            [(t, p) for t, p in self.elements if keep(t)])

    def records(self) -> list[dict]:
        out = []
        for t, prov in self.elements:
            coords = list(t.vector) if isinstance(t, NFElem) else [t]
            out.append({
                "kind": "trace",
                "mode": self.mode,
                "Q": str(self.Q),
                "f": self.f,
                "r": self.r,
                "coords": [str(c) for c in coords],
                "provenance": prov,
            })
        return out

    @classmethod
    def from_records(cls, records: list[dict]) -> "WeilTraceSet":
        recs = [rec for rec in records if rec.get("kind") == "trace"]
        if not recs:
            raise ValueError("no trace records")
        first = recs[0]
        r = first["r"]
        ts = cls(int(first["Q"]), first["f"], first["mode"], r)
        fld = make_field(r) if r else None
        for rec in recs:
            coords = [int(c) for c in rec["coords"]]
            t = fld.elem(coords) if fld else coords[0]
            ts.elements.append((t, rec["provenance"]))
        return ts


def enum_rational_traces(Q: int, f: int = 1) -> WeilTraceSet:
    """All integers a with a^2 <= 4Q, ascending (boundary included)."""
    if Q < 2:
        raise ValueError(f"Q must be >= 2, got {Q}")
    top = isqrt(4 * Q)
    return WeilTraceSet(Q, f, "rational", None,
                        [(a, ENUMERATED) for a in range(-top, top + 1)])


def _adjugate_diagonal(m: list[list[int]]) -> list[int]:
    def det(rows):
        rows = [[Fraction(v) for v in row] for row in rows]
        n, d = len(rows), Fraction(1)
        for i in range(n):
            piv = next((k for k in range(i, n) if rows[k][i] != 0), None)
            if piv is None:
                return 0
            if piv != i:
                rows[i], rows[piv] = rows[piv], rows[i]
                d = -d
            d *= rows[i][i]
            for k in range(i + 1, n):
                fct = rows[k][i] / rows[i][i]
                for j in range(i, n):
                    rows[k][j] -= fct * rows[i][j]
        return int(d)

    n = len(m)
    if n == 1:
        return [1]
    out = []
    for i in range(n):
        minor = [[m[a][b] for b in range(n) if b != i] for a in range(n) if a != i]
        out.append(det(minor))
    return out


def field_search_box(fld: RealCycloField, Q: int) -> list[int]:
    """Per-coordinate bounds |c_i| <= B_i for elements with conjugates in [-2 sqrt Q, 2 sqrt Q].

    The conjugate bound gives Tr(a^2) = c^T T c <= 4gQ with T the trace form
    (det T = disc).  On that ellipsoid c_i^2 <= 4gQ (T^-1)_ii, and Cramer's rule
    gives (T^-1)_ii = adj(T)_ii / disc exactly.
    """
    t = fld.trace_form()
    adj = _adjugate_diagonal(t)
    budget = 4 * fld.g * Q
    return [isqrt(budget * a // fld.disc) for a in adj]


def _quad_form(t, v):
    return sum(t[i][j] * v[i] * v[j] for i in range(len(v)) for j in range(len(v)))


def _scan(r: int, Q: int, box: list[int], heads: list[int]) -> list[tuple]:
    fld = make_field(r)
    t = fld.trace_form()
    budget = 4 * fld.g * Q
    ranges = [range(-b, b + 1) for b in box[1:]]
    found = []
    for c0 in heads:
        for rest in itertools.product(*ranges):
            v = (c0,) + rest
            if _quad_form(t, v) > budget:
                continue
            if conjugate_bound_check(fld.elem(v), bound_sq=4 * Q):
                found.append(v)
    return found


def enum_field_traces(fld: RealCycloField, Q: int, f: int = 1, workers: int = 1) -> WeilTraceSet:
    """All e in Z[psi] with every conjugate in [-2 sqrt(Q), 2 sqrt(Q)].

    Candidates from the exact search box are pre-filtered by the trace-form
    inequality and then decided exactly.  The first coordinate is split across
    workers; the merged output is sorted lexicographically on coordinates.
    """
    if Q < 2:
        raise ValueError(f"Q must be >= 2, got {Q}")
    box = field_search_box(fld, Q)
    heads = list(range(-box[0], box[0] + 1))
    parts = pmap(partial(_scan, fld.r, Q, box), [list(c) for c in chunked(heads, workers)], workers)
    vectors = sorted(v for part in parts for v in part)
    return WeilTraceSet(Q, f, "field", fld.r,
                        [(fld.elem(v), ENUMERATED) for v in vectors])


def trace_charpoly(a, Q: int) -> Poly:
    """prod_j (x^2 - sigma_j(a) x + Q), degree 2g and monic.

    For a field element this is Res_y(m_psi(y), x^2 - A(y) x + Q) viewed as a
    polynomial in x, recovered by exact interpolation at 2g + 1 points.
    """
    if not isinstance(a, NFElem):
        return Poly((Q, -a, 1))
    fld = a.field
    pts = []
    for x0 in range(2 * fld.g + 1):
        inner = Poly((x0 * x0 + Q,)) - a.coords * x0
        val = 0 if inner.is_zero() else poly_resultant(fld.m_psi, inner)
        pts.append((x0, val))
    out = interpolate(pts)
    assert out.is_integral() and out.lc == 1
    return out


def real_weil_polynomial(P: Poly, Q: int) -> Poly:
    """The h of degree g with P(x) = x^g h(x + Q/x).

    Requires the functional equation coeff_i = Q^(g-i) coeff_(2g-i).
    """
    n = P.degree
    if n % 2:
        raise ValueError("need even degree")
    g = n // 2
    for i in range(g):
        if P[i] != Q ** (g - i) * P[n - i]:
            raise ValueError("polynomial does not satisfy the functional equation")
    # x^k + Q^k x^-k as a polynomial in u = x + Q/x
    prev, cur = Poly((2,)), Poly.x()
    h = Poly((P[g],))
    for k in range(1, g + 1):
        if k > 1:
            prev, cur = cur, Poly.x() * cur - prev * Q
        h = h + cur * P[g + k]
    return h


def is_weil_polynomial(P: Poly, Q: int) -> bool:
    """Every complex root of P has absolute value sqrt(Q) (exact test)."""
    try:
        h = real_weil_polynomial(P, Q)
    except ValueError:
        return False
    return real_roots_within(h, 4 * Q)


def gl_exponent(n: int, p: int, k: int = 1) -> int:
    """Exponent of GL_n(Z/p^k): p^(k-1+ceil(log_p n)) * lcm_{d<=n}(p^d - 1)."""
    if n < 1 or k < 1:
        raise ValueError("need n, k >= 1")
    e = 0
    while p**e < n:
        e += 1
    out = p ** (k - 1 + e)
    for d in range(1, n + 1):
        out = lcm(out, p**d - 1)
    return out


def inertial_exponent_bound(g: int) -> int:
    """Even multiple of every inertial exponent of a g-dimensional variety.

    Semistability is reached over K(A[12]), whose inertia groups embed in
    GL_2g(Z/12); we return 2 * lcm(exp GL_2g(Z/4), exp GL_2g(Z/3)).
    """
    if g < 1:
        raise ValueError("g must be >= 1")
    return 2 * lcm(gl_exponent(2 * g, 2, 2), gl_exponent(2 * g, 3, 1))
