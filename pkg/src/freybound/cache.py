"""Content-addressed memo of record streams.

Layout: ``<dir>/<subcommand>/<sha256>.records`` plus ``<dir>/index.tsv``.
Each cache file ends with a checksum record; anything that fails to verify is
recomputed and overwritten, never trusted.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Callable

from .records import FORMAT_VERSION, from_lines, to_lines

log = logging.getLogger(__name__)

ENV_VAR = "FREYBOUND_CACHE"


def cache_key(subcommand: str, inputs: dict) -> str:
    blob = json.dumps({"cmd": subcommand, "inputs": inputs, "v": FORMAT_VERSION},
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _seal(body: str) -> str:
    digest = hashlib.sha256(body.encode()).hexdigest()
    return body + to_lines([{"kind": "checksum", "sha256": digest}])


def _unseal(text: str) -> list[dict] | None:
    lines = text.splitlines(keepends=True)
    if not lines:
        return None
    body, last = "".join(lines[:-1]), lines[-1]
    try:
        tail = json.loads(last)
    except json.JSONDecodeError:
        return None
    if tail.get("kind") != "checksum":
        return None
    if hashlib.sha256(body.encode()).hexdigest() != tail.get("sha256"):
        return None
    try:
        return from_lines(body)
    except ValueError:
        return None


class RecordCache:
    def __init__(self, root):
        self.root = Path(root)

    @classmethod
    def from_env(cls, explicit=None):
        root = explicit or os.environ.get(ENV_VAR)
        return cls(root) if root else None

    def path(self, subcommand: str, key: str) -> Path:
        return self.root / subcommand / f"{key}.records"

    def get_or_compute(self, subcommand: str, inputs: dict,
                       compute: Callable[[], list[dict]]) -> list[dict]:
        key = cache_key(subcommand, inputs)
        path = self.path(subcommand, key)
        if path.exists():
            recs = _unseal(path.read_text())
            if recs is not None:
                return recs
            log.warning("corrupt cache entry %s, recomputing", path)
        recs = compute()
        # round-trip so hits and misses hand back identical objects
        body = to_lines(recs)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(_seal(body))
        tmp.replace(path)
        with open(self.root / "index.tsv", "a") as fh:
            fh.write(f"{subcommand}\t{key}\t{json.dumps(inputs, sort_keys=True)}\n")
        return from_lines(body)
