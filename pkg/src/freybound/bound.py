"""Assembly of the reducibility-excluding bound and the x^p + y^p = z^r pipeline.

For a trace set S, a character order n = c * h'_K and Q = N(q)^f, a prime p
above which rho is reducible must divide

    |disc K| * B_char(K, c) * prod_{a in S} |N_{K/Q} Res(X^n - 1, X^2 - a X + Q)|.

For even n, Res(X^n - 1, X^2 - a X + Q) = (alpha1^n - 1)(alpha2^n - 1)
= Q^n - s_n + 1 with s_n the Lucas power sum, which is what is evaluated.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import partial

from .arith import MR_CERTIFIED_LIMIT, factorize, lucas_power_sum, product
from .cyclofield import NFElem, field_norm, hplus_default, make_field, residue_degree
from .errors import (
    DegenerateResultantError,
    PotentiallyMultiplicativeError,
    SingularModelError,
)
from .fermat import CurveFamily, specialize_family, sweep_exponent_classes
from .parallel import chunked, pmap
from .regprime import is_regular
from .weil import CURVE_DERIVED, WeilTraceSet, enum_field_traces, enum_rational_traces
from .zeta import finite_field, l_polynomial, match_rm_traces

__all__ = [
    "HYPOTHESES",
    "BoundReport",
    "unit_root_resultant",
    "assemble_bound",
    "curve_derived_traces",
    "PipelineResult",
    "fermat_bound_pipeline",
]

HYPOTHESES = [
    "(i) A is semistable at every prime of K above p [assumed, not verified]",
    "(ii) A is of GL2-type with real multiplication by a totally real field F; "
    "traces are taken in Z or Z[psi] (F = K) [assumed]",
    "(iii) every geometric endomorphism of A is defined over K [assumed]",
    "(iv) A has even inertial exponent c over K [assumed]",
    "(v) A has potentially good reduction at q with residual degree f [assumed]",
    "(vi) the trace of Frob_q^f on V_p(A) lies in the trace set S [assumed]",
]


def _trace_label(a) -> str:
    return str(a)


def _trace_coords(a) -> list[str]:
    return [str(c) for c in a.vector] if isinstance(a, NFElem) else [str(a)]


def unit_root_resultant(a, Q: int, n: int) -> int:
    """|Res(X^n - 1, X^2 - a X + Q)|, read through the norm for field traces.

    Raises DegenerateResultantError when the value is 0 (a Frobenius root is
    a root of unity and the bound is vacuous).
    """
    if n < 2 or n % 2:
        raise ValueError(f"n must be even and >= 2, got {n}")
    if Q < 1:
        raise ValueError("Q must be positive")
    s_n = lucas_power_sum(a, Q, n)
    value = Q**n - s_n + 1
    if isinstance(value, NFElem):
        value = field_norm(value)
    value = abs(value)
    if value == 0:
        raise DegenerateResultantError(a)
    return value


def _resultants_for(args, traces):
    Q, n = args
    out = []
    for a in traces:
        try:
            out.append(unit_root_resultant(a, Q, n))
        except DegenerateResultantError:
            out.append(0)
    return out


@dataclass
class BoundReport:
    r: int | None
    q: int | None
    f: int
    Q: int
    c: int
    hplus: int
    hplus_source: str
    bchar: int
    bchar_source: str
    disc: int
    trace_mode: str
    traces: list
    per_trace: list[int]
    B_res: int
    B_total: int
    factors: Counter
    c1: int | None
    degenerate: bool
    ledger: list[str] = field(default_factory=list)
    narrative: list[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.c * self.hplus

    def records(self) -> list[dict]:
        head = {
            "kind": "bound",
            "r": self.r,
            "q": self.q,
            "f": self.f,
            "Q": str(self.Q),
            "c": self.c,
            "hplus": str(self.hplus),
            "hplus_source": self.hplus_source,
            "bchar": str(self.bchar),
            "bchar_source": self.bchar_source,
            "disc": str(self.disc),
            "n": self.n,
            "trace_mode": self.trace_mode,
            "trace_count": len(self.traces),
            "B_res": str(self.B_res),
            "B_total": str(self.B_total),
            "primes": [str(p) for p in self.factors],
            "factorization": {str(p): e for p, e in self.factors.items()},
            "c1": None if self.c1 is None else str(self.c1),
            "degenerate": self.degenerate,
        }
        out = [head]
        for a, v in zip(self.traces, self.per_trace):
            out.append({"kind": "resultant", "trace": _trace_label(a),
                        "coords": _trace_coords(a), "value": str(v)})
        out += [{"kind": "ledger", "text": t} for t in self.ledger]
        out += [{"kind": "narrative", "text": t} for t in self.narrative]
        return out


def assemble_bound(S: WeilTraceSet, c: int, hK: int, disc: int, B_char: int = 1, *,
                   r: int | None = None, q: int | None = None,
                   hplus_source: str = "override", bchar_source: str | None = None,
                   allow_empty: bool = False, workers: int = 1) -> BoundReport:
    """B_total = |disc| * B_char * prod unit_root_resultant(a, Q, c*hK), factorised.

    c1 is the largest prime dividing B_total; the full factorisation is kept
    so that "p does not divide B_total" can be stated directly.
    """
    if c < 2 or c % 2:
        raise ValueError(f"c must be even, got {c}")
    if hK < 1 or B_char < 1:
        raise ValueError("h'_K and B_char must be positive")
    if not len(S) and not allow_empty:
        raise ValueError("empty trace set (pass allow_empty=True to accept)")
    n = c * hK
    traces = S.traces
    parts = pmap(partial(_resultants_for, (S.Q, n)), [list(ch) for ch in chunked(traces, workers)], workers)
    per_trace = [v for part in parts for v in part]
    degenerate = any(v == 0 for v in per_trace)
    B_res = product(per_trace)
    B_total = abs(disc) * B_char * B_res

    if bchar_source is None:
        bchar_source = "default 1" if B_char == 1 else "override"
    ledger = list(HYPOTHESES)
    ledger.append(f"h'_K = {hK} ({hplus_source}); external data, user responsibility")
    if bchar_source == "default 1":
        ledger.append("B_char(K, c) = 1 by default: the reported c1 is conditional on the true "
                      "B_char, which is not computed here")
    else:
        ledger.append(f"B_char(K, c) = {B_char} ({bchar_source}); not verified")
    if r is not None:
        ledger.append("Z[psi] is taken to be the full ring of integers of K (standard for prime r, "
                      "not checked)")
    if S.mode == "field":
        ledger.append("trace set enumerated from the Weil bound alone; the singleton trace of the "
                      "Frey variety at (1, -1, 0) needs a curve model that is not supplied")

    if degenerate:
        bad = [_trace_label(a) for a, v in zip(traces, per_trace) if v == 0]
        ledger.append("no finite bound from this trace set: root-of-unity Frobenius for trace(s) "
                      + ", ".join(bad))
        factors, c1 = Counter(), None
    else:
        factors = factorize(B_total) if B_total else Counter()
        c1 = max(factors) if factors else None
        big = [p for p in factors if p >= MR_CERTIFIED_LIMIT]
        if big:
            ledger.append("prime factors above 3.3e24 are strong probable primes only: "
                          + ", ".join(map(str, big)))

    return BoundReport(
        r=r, q=q, f=S.f, Q=S.Q, c=c, hplus=hK, hplus_source=hplus_source,
        bchar=B_char, bchar_source=bchar_source, disc=disc, trace_mode=S.mode,
        traces=list(traces), per_trace=per_trace, B_res=B_res, B_total=B_total,
        factors=factors, c1=c1, degenerate=degenerate, ledger=ledger,
    )


def curve_derived_traces(family: CurveFamily, r: int, q: int, Q: int, f: int = 1,
                         workers: int = 1) -> tuple[WeilTraceSet, list[dict]]:
    """Traces of Frobenius on the family's specialisations at all local solutions mod q.

    Each solution with z != 0 and nonsingular specialisation contributes the
    candidates whose RM-split characteristic polynomial matches its
    L-polynomial over F_Q.  Returns the trace set and one diagnostic record
    per local solution.
    """
    fld = make_field(r)
    if family.genus != fld.g:
        raise ValueError(f"family genus {family.genus} differs from [K:Q] = {fld.g}")
    k = 0
    while q**k < Q:
        k += 1
    if q**k != Q:
        raise ValueError(f"Q={Q} is not a power of q={q}")
    base = finite_field(q, k)
    candidates = enum_field_traces(fld, Q, f, workers)
    found: dict[tuple, NFElem] = {}
    diags = []
    lcache = {}
    for cls, sols in sweep_exponent_classes(q, r).items():
        for s in sols:
            rec = s.record()
            try:
                model = specialize_family(family, s, base)
            except PotentiallyMultiplicativeError:
                diags.append(rec)
                continue
            except SingularModelError as exc:
                rec["status"] = "singular"
                rec["witness"] = None if exc.witness is None else str(exc.witness)
                diags.append(rec)
                continue
            key = (model.h.coeffs, model.f.coeffs)
            if key not in lcache:
                lcache[key] = l_polynomial(model, base, workers)
            L = lcache[key]
            matches = match_rm_traces(L, candidates)
            rec["lpoly"] = [str(x) for x in L.poly.coeffs]
            rec["matched"] = [_trace_coords(a) for a in matches]
            diags.append(rec)
            for a in matches:
                found[a.vector] = a
    elements = [(found[v], CURVE_DERIVED) for v in sorted(found)]
    return WeilTraceSet(Q, f, "curve-derived", r, elements), diags


@dataclass
class PipelineResult:
    r: int
    regular: bool
    irregular_indices: list[int]
    report: BoundReport | None
    narrative: list[str]
    diagnostics: list[dict] = field(default_factory=list)

    @property
    def status(self) -> int:
        if not self.regular or (self.report is not None and self.report.degenerate):
            return 2
        return 0

    def records(self) -> list[dict]:
        out = [{"kind": "regularity", "r": self.r, "regular": self.regular,
                "irregular_indices": self.irregular_indices}]
        out += self.diagnostics
        if self.report is not None:
            out += self.report.records()
        else:
            out += [{"kind": "narrative", "text": t} for t in self.narrative]
        return out


def fermat_bound_pipeline(r: int, family: CurveFamily | None = None, hplus: int | None = None,
                          bchar: int | None = None, traces: str = "field", ideal_norm: bool = False,
                          workers: int = 1) -> PipelineResult:
    """Regularity check, field data, trace set at q = 2, and the bound c1(r).

    ``traces`` is "field" (Weil-bound enumeration in Z[psi]) or "rational"
    (integer traces only, a test hook); a ``family`` overrides both.  With
    ``ideal_norm`` the residue field of a prime above 2 in K is used
    (Q = 2^f2) instead of Q = 2.
    """
    if r < 5:
        raise ValueError("the pipeline needs r >= 5")
    regular, bad = is_regular(r)
    narrative = []
    if not regular:
        narrative.append(f"r = {r} is irregular (index {', '.join(map(str, bad))}); "
                         "the reducibility theorem used for C(r) requires a regular prime, abort")
        return PipelineResult(r, False, bad, None, narrative)
    narrative.append(f"r = {r} is regular (Kummer criterion on B_2..B_{r - 3})")

    fld = make_field(r)
    narrative.append(f"K = Q(zeta_{r})^+, m_psi = {fld.m_psi}, disc K = {fld.disc}")

    q, f, c = 2, 1, 2
    Q = q**f
    if ideal_norm:
        Q = q ** (residue_degree(r, q) * f)
    narrative.append(f"q = {q}, f = {f}, Q = N(q)^f = {Q}, c = {c}")

    if hplus is None:
        hplus, hsrc = hplus_default(r)
        hsrc = f"table: {hsrc}"
    else:
        hsrc = "override"
    bsrc = None if bchar is None else "override"
    bchar = 1 if bchar is None else bchar

    diags = []
    if family is not None:
        S, diags = curve_derived_traces(family, r, q, Q, f, workers)
        narrative.append(f"trace set from the supplied family: {len(S)} trace(s)")
    elif traces == "rational":
        S = enum_rational_traces(Q, f)
        narrative.append(f"trace set restricted to rational integers: {len(S)} trace(s)")
    elif traces == "field":
        S = enum_field_traces(fld, Q, f, workers)
        narrative.append(f"trace set from the Weil bound in Z[psi]: {len(S)} trace(s); "
                         "no model of the Frey variety at (1, -1, 0) was supplied")
    else:
        raise ValueError(f"unknown trace mode {traces!r}")

    report = assemble_bound(S, c, hplus, fld.disc, bchar, r=r, q=q, hplus_source=hsrc,
                            bchar_source=bsrc, allow_empty=True, workers=workers)
    report.ledger.append("regularity decided by Kummer's criterion (classical theorem, "
                         "class numbers are not computed)")
    if report.degenerate:
        narrative.append("no finite c1: some trace has a root-of-unity Frobenius root")
    else:
        narrative.append(f"B_total = {report.B_total}, c1 = {report.c1}")
        narrative.append(f"for every prime p not dividing B_total, in particular p > {report.c1}, "
                         "rho_(J,p) is irreducible under hypotheses (i)-(vi)")
    narrative.append("C(r) also needs c2(r) from the reducibility theorem for regular r; "
                     "that constant is ineffective and not computable here")
    report.narrative = narrative
    return PipelineResult(r, True, [], report, narrative, diags)
