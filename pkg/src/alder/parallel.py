"""Order-restoring work splitting for grid cells.

Cells are pure functions of their parameters, so any degree of
parallelism must produce the identical report; results are therefore
collected strictly in input order.  Callers warm all shared count
tables before fanning out (on fork-based platforms workers inherit
them; elsewhere workers rebuild lazily, which is slower but gives the
same values).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], items: Sequence[T], jobs: int = 1) -> list[R]:
    if jobs <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    chunk = max(1, len(items) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=chunk))
