"""Local solutions of x^p + y^p = z^r modulo a prime q, and curve specialisation.

The exponent p only matters through p mod (q - 1).  Classes are represented
by e in 1..q-1 with p = e (mod q - 1), so that x^p = x^e for every x in Z/q,
including x = 0.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from math import gcd

from .arith import Poly, factorize, is_prime
from .errors import PotentiallyMultiplicativeError, SingularModelError
from .zeta import FiniteField, HyperellipticModel, check_nonsingular

__all__ = [
    "LocalSolution",
    "CurveFamily",
    "normalize_class",
    "class_attainability",
    "enum_local_solutions",
    "sweep_exponent_classes",
    "check_global_hypotheses",
    "specialize_family",
]


@dataclass(frozen=True)
class LocalSolution:
    q: int
    p_class: int
    r: int
    triple: tuple
    flags: dict = field(hash=False)
    t_value: int | None

    @property
    def degenerate(self) -> bool:
        return self.t_value is None

    def record(self) -> dict:
        return {
            "kind": "local_solution",
            "q": self.q,
            "p_class": self.p_class,
            "r": self.r,
            "triple": list(self.triple),
            "flags": dict(self.flags),
            "t": None if self.t_value is None else self.t_value,
            "status": "potentially-multiplicative" if self.degenerate else "defined",
        }


@dataclass(frozen=True)
class CurveFamily:
    """y^2 + h(t, x) y = f(t, x).

    ``h_rows[i]`` / ``f_rows[i]`` hold the coefficients of x^i as integer
    polynomials in t (lowest t-degree first).
    """

    genus: int
    h_rows: tuple
    f_rows: tuple

    def specialize(self, t: int, modulus: int | None = None) -> tuple[Poly, Poly]:
        def sub(rows):
            out = []
            for row in rows:
                v = Poly(row)(t)
                out.append(v % modulus if modulus else v)
            return Poly(out)

        return sub(self.h_rows), sub(self.f_rows)


def normalize_class(p_class: int, q: int) -> int:
    e = p_class % (q - 1)
    return q - 1 if e == 0 else e


def class_attainability(q: int, e: int) -> str:
    """Which odd primes p have p = e (mod q - 1)."""
    n = q - 1
    if gcd(e, n) == 1:
        return "infinitely many primes"
    hits = [l for l in factorize(gcd(e, n)) if l % 2 and l % n == e % n]
    if hits:
        return "only p=" + ",".join(map(str, hits))
    return "no odd prime"


def enum_local_solutions(q: int, p_class: int, r: int) -> list[LocalSolution]:
    """Every (x, y, z) in (Z/q)^3 with x^e + y^e = z^r, lexicographic order."""
    if not is_prime(q):
        raise ValueError(f"q={q} is not prime")
    e = normalize_class(p_class, q)
    xp = [pow(x, e, q) for x in range(q)]
    zr = [pow(z, r, q) for z in range(q)]
    by_value = defaultdict(list)
    for z, v in enumerate(zr):
        by_value[v].append(z)
    out = []
    for x in range(q):
        for y in range(q):
            for z in by_value.get((xp[x] + xp[y]) % q, ()):
                flags = {
                    "x0": x == 0,
                    "y0": y == 0,
                    "z0": z == 0,
                    "xy0": x * y % q == 0,
                }
                t = None if z == 0 else xp[x] * pow(zr[z], -1, q) % q
                out.append(LocalSolution(q, e, r, (x, y, z), flags, t))
    return out


def sweep_exponent_classes(q: int, r: int) -> dict[int, list[LocalSolution]]:
    """enum_local_solutions for every class e = 1..q-1 (all residues, not only attainable ones)."""
    if not is_prime(q):
        raise ValueError(f"q={q} is not prime")
    return {e: enum_local_solutions(q, e, r) for e in range(1, q)}


def check_global_hypotheses(a: int, b: int, c: int, p: int, r: int) -> dict:
    """Predicate report for (a, b, c) against x^p + y^p = z^r and the Frey-variety conditions."""
    is_solution = a**p + b**p == c**r
    r_div = (a * b) % r == 0
    odd = (a * b) % 2 == 1
    return {
        "is_solution": is_solution,
        "nontrivial": a * b * c != 0,
        "proper": gcd(gcd(a, b), c) == 1,
        "r_divides_ab": r_div,
        "ab_odd": odd,
        # claims rest on external results about the Frey variety, not on this tool
        "semistable_claim": r_div,
        "good_reduction_at_2_claim": r_div and odd,
    }


def specialize_family(fam: CurveFamily, s: LocalSolution, fld: FiniteField) -> HyperellipticModel:
    """Substitute t = s.t_value into the family, over the prime field of ``fld``.

    Raises PotentiallyMultiplicativeError when z = 0 and SingularModelError
    when the specialised curve is singular (including a degree drop).
    """
    if fld.p != s.q:
        raise ValueError(f"field characteristic {fld.p} differs from q={s.q}")
    if s.t_value is None:
        raise PotentiallyMultiplicativeError(f"t undefined for triple {s.triple} (z = 0)")
    h, f = fam.specialize(s.t_value, s.q)
    g = fam.genus
    if f.degree not in (2 * g + 1, 2 * g + 2) or h.degree > g + 1:
        raise SingularModelError(
            f"specialisation at t={s.t_value} drops to degree {f.degree} mod {s.q}",
            witness=s.t_value,
        )
    model = HyperellipticModel(h, f, g)
    check_nonsingular(model, s.q)
    return model
