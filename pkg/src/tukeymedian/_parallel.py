"""Optional thread pool controlled by an environment variable.

``TUKEYMEDIAN_THREADS`` sets the worker count (default 1).  Results are always
collected in input order, so output never depends on the setting.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

ENV_VAR = "TUKEYMEDIAN_THREADS"

T = TypeVar("T")
R = TypeVar("R")


def thread_count() -> int:
    raw = os.environ.get(ENV_VAR, "1").strip() or "1"
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{ENV_VAR} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{ENV_VAR} must be a positive integer, got {raw!r}")
    return value


def ordered_map(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
