"""Deterministic parallel map.

Sweeps are embarrassingly parallel; results are always reassembled in
input order so the worker count can never change output bytes.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor


def default_threads() -> int:
    return os.cpu_count() or 1


def pmap(fn, items, threads: int | None = None,
         initializer=None, initargs=()) -> list:
    """fn over items, order preserved; threads <= 1 stays in-process.

    Workers exchange only picklable primitives; initializer rebuilds any
    shared state per process.
    """
    items = list(items)
    if threads is None:
        threads = default_threads()
    if threads <= 1 or len(items) <= 1:
        if initializer is not None:
            initializer(*initargs)
        return [fn(x) for x in items]
    workers = min(threads, len(items))
    chunk = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers, initializer=initializer,
                             initargs=initargs) as pool:
        return list(pool.map(fn, items, chunksize=chunk))
