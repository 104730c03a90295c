"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line.

The lines are also repeated in the pytest terminal summary (see conftest.py).
"""

import itertools
import json
import subprocess
import sys
import time
from contextlib import contextmanager

import mpmath

from freybound.arith import Poly, is_prime, lucas_power_sum, poly_discriminant, poly_resultant
from freybound.bound import assemble_bound
from freybound.cli import main
from freybound.curves import SMOKE_CURVES, weierstrass_ap, weierstrass_discriminant
from freybound.cyclofield import galois_conjugate, make_field
from freybound.regprime import is_regular
from freybound.weil import WeilTraceSet, enum_field_traces
from freybound.zeta import HyperellipticModel, count_points, finite_field, l_polynomial, predicted_counts

RESULTS = []


@contextmanager
def criterion(number, title, budget):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < budget
        status = "PASS" if ok and within else "FAIL"
        line = f"[{status}] criterion {number:2d}: {title} ({elapsed:.2f}s, budget {budget}s)"
        RESULTS.append(line)
        print(line)
    assert within, f"criterion {number} took {elapsed:.2f}s, budget {budget}s"


def _run_cli(capsys, *argv):
    status = main(list(argv))
    out, _ = capsys.readouterr()
    return status, out


def test_01_resultant_identity():
    with criterion(1, "|Res(X^n-1, X^2-aX+Q)| = |Q^n - s_n + 1|", 1.0):
        for a in range(-6, 7):
            for Q in range(2, 10):
                for n in range(2, 13, 2):
                    generic = poly_resultant(Poly.monomial(n) - 1, Poly([Q, -a, 1]))
                    assert abs(generic) == abs(Q**n - lucas_power_sum(a, Q, n) + 1)


def test_02_discriminant_law():
    with criterion(2, "disc(m_psi) = r^((r-3)/2), r in {5, 7, 11, 13}", 1.0):
        for r in (5, 7, 11, 13):
            assert poly_discriminant(make_field(r).m_psi) == r ** ((r - 3) // 2)


def test_03_regularity_sweep():
    with criterion(3, "irregular primes below 100 = {37, 59, 67}, index 32 for 37", 30.0):
        found = {}
        for r in range(3, 100):
            if not is_prime(r):
                continue
            ok, bad = is_regular(r)
            m = r * r
            oracle = [k for k in range(2, r - 2, 2) if sum(pow(a, k, m) for a in range(1, r)) % m == 0]
            assert bad == oracle
            if not ok:
                found[r] = bad
        assert set(found) == {37, 59, 67}
        assert found[37] == [32]


def test_04_zeta_suite():
    with criterion(4, "all nonsingular y^2 = x^3 + ax + b over F_5", 60.0):
        fld = finite_field(5)
        checked = 0
        for a, b in itertools.product(range(5), repeat=2):
            m = HyperellipticModel(Poly([]), Poly([b, a, 0, 1]), 1)
            if (4 * a**3 + 27 * b * b) % 5 == 0:
                continue
            n1 = 1 + sum(1 for x in range(5) for y in range(5)
                         if (y * y - x**3 - a * x - b) % 5 == 0)
            L = l_polynomial(m, fld)
            assert -L.poly[1] == 5 + 1 - n1
            assert L.poly[2] == 5 * L.poly[0]
            assert L.poly[1] ** 2 <= 4 * 5
            checked += 1
        assert checked == 20


def test_05_genus2_consistency():
    with criterion(5, "y^2 = x^5 + 1 over F_3: predicted N_2 = count over F_9", 10.0):
        m = HyperellipticModel(Poly([]), Poly([1, 0, 0, 0, 0, 1]), 2)
        L = l_polynomial(m, finite_field(3))
        assert predicted_counts(L, 2)[1] == count_points(m, finite_field(3, 2))
        # independent F_9 = F_3[i], i^2 = -1
        els = [(u, v) for u in range(3) for v in range(3)]

        def mul(s, t):
            return ((s[0] * t[0] - s[1] * t[1]) % 3, (s[0] * t[1] + s[1] * t[0]) % 3)

        def fifth_plus_one(x):
            p = (1, 0)
            for _ in range(5):
                p = mul(p, x)
            return ((p[0] + 1) % 3, p[1])

        direct = 1 + sum(1 for x in els for y in els if mul(y, y) == fifth_plus_one(x))
        assert predicted_counts(L, 2)[1] == direct == 10


def test_06_trace_set_completeness():
    with criterion(6, "enum_field_traces(field(5), 2) equals the coordinate-box oracle", 10.0):
        fld = make_field(5)
        S = enum_field_traces(fld, 2)
        got = {e.vector for e in S}
        mpmath.mp.dps = 40
        psis = [2 * mpmath.cos(2 * mpmath.pi * k / 5) for k in (1, 2)]
        limit = 2 * mpmath.sqrt(2)
        oracle = {(c0, c1) for c0 in range(-10, 11) for c1 in range(-10, 11)
                  if all(abs(c0 + c1 * p) <= limit for p in psis)}
        assert got == oracle
        psi = fld.psi
        for e in (0, 1, -1, 2, -2, psi, -psi, psi + 1, -(psi + 1)):
            e = fld.elem([e]) if isinstance(e, int) else e
            assert e.vector in got
        for e in S:
            assert (-e).vector in got
            assert galois_conjugate(e, 2).vector in got


def test_07_pipeline_desk_number(capsys):
    with criterion(7, "pipeline 5 --traces rational: 14400, 72000, {2,3,5}, c1 = 5", 1.0):
        status, out = _run_cli(capsys, "pipeline", "5", "--traces", "rational", "--format", "records")
        head = next(r for r in map(json.loads, out.splitlines()) if r["kind"] == "bound")
        assert status == 0
        assert head["B_res"] == "14400" and head["B_total"] == "72000"
        assert head["primes"] == ["2", "3", "5"] and head["c1"] == "5"


def test_08_soundness_smoke():
    with criterion(8, "p | B_total from S = {a_2(E)} for every built-in isogenous curve", 1.0 * len(SMOKE_CURVES)):
        for label, ainvs, p in SMOKE_CURVES:
            assert weierstrass_discriminant(ainvs) % 2, label
            a2 = weierstrass_ap(ainvs, 2)
            rep = assemble_bound(WeilTraceSet(2, 1, "rational", None, [(a2, "curve")]), 2, 1, 1, 1)
            assert rep.B_total % p == 0, label


def test_09_local_sweep(capsys):
    with criterion(9, "local 2 5: four triples with x + y = z mod 2, (1,-1,0) flagged z0", 1.0):
        status, out = _run_cli(capsys, "local", "2", "5", "--format", "records")
        sols = [r for r in map(json.loads, out.splitlines()) if r["kind"] == "local_solution"]
        assert status == 0
        triples = [tuple(s["triple"]) for s in sols]
        assert triples == [t for t in itertools.product(range(2), repeat=3) if (t[0] + t[1] - t[2]) % 2 == 0]
        flagged = next(s for s in sols if tuple(s["triple"]) == (1, -1 % 2, 0))
        assert flagged["flags"]["z0"] and flagged["status"] == "potentially-multiplicative"


def test_10_determinism():
    with criterion(10, "pipeline 7 with 1 and 8 workers: byte-identical records", 60.0):
        outs = []
        for workers in ("1", "8"):
            proc = subprocess.run(
                [sys.executable, "-m", "freybound", "pipeline", "7", "--format", "records",
                 "--workers", workers],
                capture_output=True, check=True,
            )
            outs.append(proc.stdout)
        assert outs[0] == outs[1] and outs[0]
