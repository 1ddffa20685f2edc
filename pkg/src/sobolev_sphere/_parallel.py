"""Ordered thread-pool map used by the Monte Carlo runners."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Optional, TypeVar

T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV = "SOBOLEV_SPHERE_THREADS"


def resolve_threads(threads: Optional[int] = None) -> int:
    """Explicit value, else the environment override, else 1."""
    if threads is None:
        env = os.environ.get(THREADS_ENV)
        threads = int(env) if env else 1
    if threads < 1:
        raise ValueError("threads must be >= 1")
    return threads


def ordered_map(fn: Callable[[T], R], items: Iterable[T],
                threads: Optional[int] = None) -> list[R]:
    # results come back in input order whatever the pool size, so any
    # reduction over them is deterministic
    threads = resolve_threads(threads)
    items = list(items)
    if threads == 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
