"""Order-preserving map over a process pool.

Results never depend on the worker count: callers derive every random stream
from the item itself (usually a seed spawned per item), and results come back
in input order.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor


def parallel_map(fn, items, workers: int = 1, chunksize: int = 1) -> list:
    items = list(items)
    if workers is None or workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))
