from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV = "TUAV_PLACE_THREADS"


def worker_count(workers: int | None = None) -> int:
    """Resolve a worker count; ``None`` reads ``TUAV_PLACE_THREADS`` (0 or unset = all CPUs)."""
    if workers is None:
        raw = os.environ.get(THREADS_ENV, "0").strip() or "0"
        try:
            workers = int(raw)
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if workers <= 0:
        workers = os.cpu_count() or 1
    return workers


def ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: int | None = None) -> list[R]:
    """``map`` over ``items`` with results in input order, whatever the worker count."""
    items = list(items)
    n = min(worker_count(workers), max(len(items), 1))
    if n == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
