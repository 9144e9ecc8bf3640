"""Deterministic fan-out across a process pool.

Every job derives its randomness from its own coordinates, never from
execution order, so results are identical for any worker count. Jobs are
submitted and collected in input order.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence

#: Environment variable holding the default worker count.
WORKERS_ENV = "BINDSUM_WORKERS"


def resolve_workers(workers: int | None) -> int:
    if workers is not None:
        if workers < 1:
            raise ValueError(f"workers must be >= 1, got {workers}")
        return workers
    raw = os.environ.get(WORKERS_ENV, "").strip()
    if raw:
        n = int(raw)
        if n < 1:
            raise ValueError(f"{WORKERS_ENV} must be >= 1, got {raw}")
        return n
    return 1


def pmap(fn: Callable, items: Sequence, workers: int | None = None) -> list:
    """Map ``fn`` over ``items``, preserving order; plain loop for 1 worker."""
    n = resolve_workers(workers)
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(n, len(items))) as ex:
        return list(ex.map(fn, items))
