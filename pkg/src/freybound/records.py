"""Record stream (JSON lines) and aligned-table rendering."""

from __future__ import annotations

import json

FORMAT_VERSION = 1

# kinds rendered as one aligned row per record; everything else is key: value
_TABULAR = {
    "trace": ["mode", "Q", "coords", "provenance"],
    "resultant": ["trace", "coords", "value"],
    "local_solution": ["q", "p_class", "triple", "flags", "t", "status"],
    "exponent_class": ["q", "p_class", "solutions", "attainable"],
    "count": ["q", "N"],
}


def dumps(rec: dict) -> str:
    rec = dict(rec)
    rec["v"] = FORMAT_VERSION
    return json.dumps(rec, sort_keys=True, separators=(",", ":"))


def to_lines(records: list[dict]) -> str:
    return "".join(dumps(r) + "\n" for r in records)


def from_lines(text: str) -> list[dict]:
    out = []
    for line in text.splitlines():
        if line.strip():
            rec = json.loads(line)
            if rec.get("v") != FORMAT_VERSION:
                raise ValueError(f"unsupported record format {rec.get('v')!r}")
            out.append(rec)
    return out


def _cell(v) -> str:
    if isinstance(v, dict):
        if all(isinstance(x, bool) for x in v.values()):
            on = [k for k, val in v.items() if val]
            return ",".join(on) if on else "-"
        return " * ".join(f"{k}^{x}" for k, x in v.items())
    if isinstance(v, (list, tuple)):
        return "(" + ",".join(_cell(x) for x in v) + ")"
    if v is None:
        return "-"
    return str(v)


def render_table(records: list[dict]) -> str:
    lines = [f"# freybound format {FORMAT_VERSION}"]
    i = 0
    while i < len(records):
        kind = records[i].get("kind")
        if kind in _TABULAR:
            cols = _TABULAR[kind]
            block = []
            while i < len(records) and records[i].get("kind") == kind:
                block.append([_cell(records[i].get(c)) for c in cols])
                i += 1
            widths = [max(len(c), *(len(row[j]) for row in block)) for j, c in enumerate(cols)]
            lines.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
            for row in block:
                lines.append("  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip())
            continue
        rec = records[i]
        i += 1
        if kind in ("ledger", "narrative", "note"):
            lines.append(f"{kind}: {rec['text']}")
        elif kind == "regularity":
            if rec["regular"]:
                lines.append(f"r = {rec['r']}: regular")
            else:
                idx = ", ".join(map(str, rec["irregular_indices"]))
                lines.append(f"r = {rec['r']}: irregular at {idx}")
        else:
            width = max(len(k) for k in rec)
            lines.append(f"[{kind}]")
            for k, v in rec.items():
                if k != "kind":
                    lines.append(f"  {k.ljust(width)}  {_cell(v)}")
    return "\n".join(lines) + "\n"
