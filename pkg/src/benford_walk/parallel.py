"""Deterministic fan-out of per-replica work over a thread pool."""

from concurrent.futures import ThreadPoolExecutor
import os

THREADS_ENV = "BENFORD_WALK_THREADS"


def worker_count(threads=None):
    """Worker cap: explicit argument, else ``$BENFORD_WALK_THREADS``, else CPU count."""
    if threads is None:
        env = os.environ.get(THREADS_ENV, "").strip()
        threads = int(env) if env else (os.cpu_count() or 1)
    return max(1, int(threads))


def map_replicas(fn, count, threads=None):
    """``[fn(0), fn(1), ..., fn(count - 1)]`` computed on up to ``threads`` workers.

    Results come back in index order whatever the schedule, so any reduction
    over them is independent of the worker count.
    """
    workers = min(worker_count(threads), count)
    if workers <= 1:
        return [fn(i) for i in range(count)]
    bounds = [count * k // workers for k in range(workers + 1)]

    def run_chunk(k):
        return [fn(i) for i in range(bounds[k], bounds[k + 1])]

    with ThreadPoolExecutor(max_workers=workers) as pool:
        chunks = list(pool.map(run_chunk, range(workers)))
    return [r for chunk in chunks for r in chunk]
