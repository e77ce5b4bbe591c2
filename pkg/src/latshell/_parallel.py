"""Deterministic data-parallel helpers.

Work is split into partitions whose boundaries depend only on the problem size, never
on the worker count, so reductions over partition results are bit-identical whether
they run on one thread or many.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

from .errors import InvalidArgument

ENV_WORKERS = "LATSHELL_WORKERS"


def resolve_workers(workers: int | None = None, default: int = 1) -> int:
    if workers is None:
        env = os.environ.get(ENV_WORKERS)
        if env:
            try:
                workers = int(env)
            except ValueError as exc:
                raise InvalidArgument(f"{ENV_WORKERS}={env!r} is not an integer") from exc
        else:
            workers = default
    if workers < 1:
        raise InvalidArgument(f"workers must be >= 1, got {workers}")
    return workers


def split_range(lo: int, hi: int, target: int) -> list[tuple[int, int]]:
    """Split the inclusive integer range [lo, hi] into blocks of at most ``target`` values."""
    target = max(1, target)
    return [(a, min(a + target - 1, hi)) for a in range(lo, hi + 1, target)]


def pmap(fn, parts, workers: int = 1) -> list:
    """Map ``fn`` over ``parts`` and return results in input order.

    numpy releases the GIL in the integer kernels used by the counters, so threads give
    real concurrency without pickling the inputs.
    """
    parts = list(parts)
    if workers <= 1 or len(parts) <= 1:
        return [fn(p) for p in parts]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, parts))
