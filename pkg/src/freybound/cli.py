"""Command-line front end.

Exit statuses: 0 success or affirmative answer, 2 definite negative
(irregular prime, degenerate bound), 1 error.
"""

from __future__ import annotations

import argparse
import hashlib
import logging
import sys

from . import __version__
from .bound import assemble_bound, fermat_bound_pipeline, curve_derived_traces
from .cache import ENV_VAR, RecordCache
from .cyclofield import hplus_default, make_field
from .errors import FreyboundError
from .fermat import class_attainability, sweep_exponent_classes
from .formats import parse_family, parse_model
from .records import render_table, to_lines
from .regprime import is_regular
from .weil import WeilTraceSet, enum_field_traces, enum_rational_traces
from .zeta import finite_field, l_polynomial, predicted_counts

log = logging.getLogger("freybound")

MODEL_HELP = """model file format (one item per line, '#' comments):
  p k          base field F_(p^k)
  h0 h1 ...    coefficients of h, lowest degree first ('-' for h = 0)
  f0 f1 ...    coefficients of f
  g            genus
  rule         points at infinity: auto | 0 | 1 | 2 (optional, default auto)
"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _read_text(path):
    with open(path) as fh:
        return fh.read()


def _digest(text):
    return hashlib.sha256(text.encode()).hexdigest()


# each command returns (inputs for the cache key, compute(), status(records))

def _cmd_regular(args):
    inputs = {"r": args.r}

    def compute():
        ok, bad = is_regular(args.r)
        return [{"kind": "regularity", "r": args.r, "regular": ok, "irregular_indices": bad}]

    return inputs, compute, lambda recs: 0 if recs[0]["regular"] else 2


def _cmd_traces(args):
    if args.mode == "rational":
        if len(args.values) != 1:
            raise UsageError("usage: traces rational Q")
        r, Q = None, args.values[0]
    else:
        if len(args.values) != 2:
            raise UsageError("usage: traces field R Q")
        r, Q = args.values
    inputs = {"mode": args.mode, "r": r, "Q": Q, "f": args.f}

    def compute():
        if r is None:
            S = enum_rational_traces(Q, args.f)
        else:
            S = enum_field_traces(make_field(r), Q, args.f, args.workers)
        return S.records()

    return inputs, compute, lambda recs: 0


def _cmd_local(args):
    fam_text = _read_text(args.family) if args.family else None
    inputs = {"q": args.q, "r": args.r, "f": args.f,
              "family": None if fam_text is None else _digest(fam_text)}

    def compute():
        sweep = sweep_exponent_classes(args.q, args.r)
        out = [{"kind": "exponent_class", "q": args.q, "p_class": e, "solutions": len(sols),
                "attainable": class_attainability(args.q, e)} for e, sols in sweep.items()]
        if fam_text is None:
            for sols in sweep.values():
                out += [s.record() for s in sols]
            return out
        fam = parse_family(fam_text)
        S, diags = curve_derived_traces(fam, args.r, args.q, args.q**args.f, args.f, args.workers)
        return out + diags + S.records()

    return inputs, compute, lambda recs: 0


def _cmd_zeta(args):
    text = _read_text(args.model)
    inputs = {"model": _digest(text)}

    def compute():
        model, p, k = parse_model(text)
        base = finite_field(p, k)
        L = l_polynomial(model, base, args.workers)
        out = [{"kind": "model", "p": p, "k": k, "curve": str(model), "genus": model.genus,
                "points_at_infinity_rule": model.points_at_infinity_rule}]
        out += L.records()
        out += [{"kind": "count", "q": str(base.q**j), "N": str(n)}
                for j, n in enumerate(predicted_counts(L, model.genus + 1), start=1)]
        return out

    return inputs, compute, lambda recs: 0


def _parse_trace(text, r):
    parts = [int(x) for x in text.split(",")]
    if r is None:
        if len(parts) != 1:
            raise UsageError(f"rational trace expected, got {text}")
        return parts[0]
    return make_field(r).elem(parts)


def _hplus(args):
    if args.hplus is not None:
        return args.hplus, "override (--hplus)"
    if args.r is None:
        return 1, "K = Q has trivial class group"
    return hplus_default(args.r)


def _cmd_bound(args):
    if args.traces == "field" and args.r is None:
        raise UsageError("--traces field needs --r")
    inputs = {"Q": args.Q, "r": args.r, "c": args.c, "f": args.f, "traces": args.traces,
              "explicit": args.trace, "hplus": args.hplus, "bchar": args.bchar}

    def compute():
        field_r = args.r if args.traces == "field" else None
        if args.trace:
            elems = [(_parse_trace(t, field_r), "user") for t in args.trace]
            S = WeilTraceSet(args.Q, args.f, "field" if field_r else "rational", field_r, elems)
        elif field_r:
            S = enum_field_traces(make_field(field_r), args.Q, args.f, args.workers)
        else:
            S = enum_rational_traces(args.Q, args.f)
        disc = make_field(args.r).disc if args.r else 1
        hK, hsrc = _hplus(args)
        bchar = 1 if args.bchar is None else args.bchar
        bsrc = None if args.bchar is None else "override (--bchar)"
        rep = assemble_bound(S, args.c, hK, disc, bchar, r=args.r, hplus_source=hsrc,
                             bchar_source=bsrc, allow_empty=True, workers=args.workers)
        return rep.records()

    return inputs, compute, lambda recs: 2 if recs[0]["degenerate"] else 0


def _cmd_pipeline(args):
    fam_text = _read_text(args.family) if args.family else None
    inputs = {"r": args.r, "traces": args.traces, "ideal_norm": args.ideal_norm,
              "hplus": args.hplus, "bchar": args.bchar,
              "family": None if fam_text is None else _digest(fam_text)}

    def compute():
        fam = parse_family(fam_text) if fam_text is not None else None
        res = fermat_bound_pipeline(args.r, family=fam, hplus=args.hplus, bchar=args.bchar,
                                    traces=args.traces, ideal_norm=args.ideal_norm,
                                    workers=args.workers)
        return res.records()

    def status(recs):
        if not recs[0]["regular"]:
            return 2
        head = next(r for r in recs if r["kind"] == "bound")
        return 2 if head["degenerate"] else 0

    return inputs, compute, status


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache", metavar="DIR", help=f"cache directory (default ${ENV_VAR})")
    common.add_argument("--format", choices=["table", "records"], default="table")
    common.add_argument("--workers", type=_positive, default=1, metavar="N")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="freybound", description="Effective irreducibility bounds for Frey abelian varieties.")
    p.add_argument("--version", action="version", version=f"freybound {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("regular", parents=[common], help="Kummer regularity test")
    s.add_argument("r", type=int)
    s.set_defaults(run=_cmd_regular)

    s = sub.add_parser("traces", parents=[common], help="enumerate Weil traces",
                       description="traces rational Q  |  traces field R Q")
    s.add_argument("mode", choices=["rational", "field"])
    s.add_argument("values", type=int, nargs="+")
    s.add_argument("--f", type=_positive, default=1, help="residual degree (Q^f is the count field)")
    s.set_defaults(run=_cmd_traces)

    s = sub.add_parser("local", parents=[common], help="local solutions of x^p + y^p = z^r mod q")
    s.add_argument("q", type=int)
    s.add_argument("r", type=int)
    s.add_argument("--family", metavar="PATH", help="curve family to specialise and match")
    s.add_argument("--f", type=_positive, default=1, help="count over F_(q^f)")
    s.set_defaults(run=_cmd_local)

    s = sub.add_parser("zeta", parents=[common], help="L-polynomial of a hyperelliptic curve",
                       epilog=MODEL_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    s.add_argument("model", metavar="MODEL_PATH")
    s.set_defaults(run=_cmd_zeta)

    s = sub.add_parser("bound", parents=[common], help="assemble the resultant bound")
    s.add_argument("Q", type=int)
    s.add_argument("--r", type=int, help="odd prime r, K = Q(zeta_r)^+")
    s.add_argument("--traces", choices=["rational", "field"], default="rational")
    s.add_argument("--trace", action="append", metavar="A",
                   help="explicit trace; field traces as comma-separated coordinates (repeatable)")
    s.add_argument("--c", type=int, default=2, help="even inertial exponent")
    s.add_argument("--f", type=_positive, default=1)
    s.add_argument("--hplus", type=_positive, metavar="N")
    s.add_argument("--bchar", type=_positive, metavar="N")
    s.set_defaults(run=_cmd_bound)

    s = sub.add_parser("pipeline", parents=[common], help="full bound for the equation x^p + y^p = z^r")
    s.add_argument("r", type=int)
    s.add_argument("--traces", choices=["rational", "field"], default="field")
    s.add_argument("--family", metavar="PATH")
    s.add_argument("--ideal-norm", action="store_true",
                   help="use the residue field of a prime above 2 in K instead of F_2")
    s.add_argument("--hplus", type=_positive, metavar="N")
    s.add_argument("--bchar", type=_positive, metavar="N")
    s.set_defaults(run=_cmd_pipeline)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"freybound: error: {exc}", file=sys.stderr)
        return 1
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        inputs, compute, status = args.run(args)
        cache = RecordCache.from_env(args.cache)
        recs = cache.get_or_compute(args.command, inputs, compute) if cache else compute()
    except UsageError as exc:
        print(f"freybound: error: {exc}", file=sys.stderr)
        return 1
    except (FreyboundError, ValueError, KeyError, OSError) as exc:
        print(f"freybound: error: {exc}", file=sys.stderr)
        return 1
    out = to_lines(recs) if args.format == "records" else render_table(recs)
    sys.stdout.write(out)
    return status(recs)
