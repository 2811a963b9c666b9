from __future__ import annotations

from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

from .config import FracConfig

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(func: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """Apply ``func`` to every item, keeping the input order.

    Work is spread over :meth:`FracConfig.worker_count` threads. With one worker, or
    fewer than two items, everything runs in the calling thread. The first exception
    raised by ``func`` is re-raised.
    """
    items = list(items)
    workers = min(FracConfig.worker_count(), len(items))
    if workers <= 1:
        return [func(item) for item in items]

    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="fracbern") as pool:
        return list(pool.map(func, items))
