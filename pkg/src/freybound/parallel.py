"""Order-preserving parallel map.

Results always come back in input order, so any output built from them is
independent of the worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def pmap(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> list[R]:
    items = list(items)
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if workers == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))


def chunked(seq: Sequence[T], n: int) -> list[Sequence[T]]:
    """Split seq into at most n contiguous, nearly equal slices."""
    n = max(1, min(n, len(seq)))
    size, extra = divmod(len(seq), n)
    out, start = [], 0
    for i in range(n):
        stop = start + size + (1 if i < extra else 0)
        out.append(seq[start:stop])
        start = stop
    return [c for c in out if len(c)]
