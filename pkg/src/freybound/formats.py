"""Plain-text input formats for curve models and curve families.

Model file (one item per line, ``#`` starts a comment)::

    p k                 base field F_(p^k)
    h0 h1 ...           coefficients of h, lowest degree first ("-" for h = 0)
    f0 f1 ...           coefficients of f
    g                   genus
    auto                points-at-infinity rule: auto | 0 | 1 | 2 (optional)

Family file::

    genus 2
    h                   rows follow; row i lists the t-coefficients of x^i
    f
    1 1                 x^0 coefficient is 1 + t
    0
    ...

An empty ``h`` section means h = 0.
"""

from __future__ import annotations

from pathlib import Path

from .arith import Poly
from .fermat import CurveFamily
from .zeta import HyperellipticModel

__all__ = ["parse_model", "read_model", "parse_family", "read_family"]


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _ints(line: str) -> list[int]:
    if line in ("-", "0"):
        return [0]
    return [int(tok) for tok in line.replace(",", " ").split()]


def parse_model(text: str) -> tuple[HyperellipticModel, int, int]:
    lines = _lines(text)
    if len(lines) < 4:
        raise ValueError("model file needs at least 4 lines: 'p k', h, f, genus")
    p, k = (int(tok) for tok in lines[0].split())
    h = Poly(_ints(lines[1]))
    f = Poly(_ints(lines[2]))
    genus = int(lines[3])
    rule = lines[4] if len(lines) > 4 else "auto"
    return HyperellipticModel(h, f, genus, rule), p, k


def read_model(path) -> tuple[HyperellipticModel, int, int]:
    return parse_model(Path(path).read_text())


def parse_family(text: str) -> CurveFamily:
    lines = _lines(text)
    if not lines or not lines[0].startswith("genus"):
        raise ValueError("family file must start with 'genus N'")
    genus = int(lines[0].split()[1])
    sections = {"h": [], "f": []}
    current = None
    for line in lines[1:]:
        if line in ("h", "f", "h:", "f:"):
            current = line[0]
            continue
        if current is None:
            raise ValueError(f"coefficient row outside an h/f section: {line!r}")
        sections[current].append(tuple(_ints(line)))
    if not sections["f"]:
        raise ValueError("family file has no f rows")
    return CurveFamily(genus, tuple(sections["h"]), tuple(sections["f"]))


def read_family(path) -> CurveFamily:
    return parse_family(Path(path).read_text())
