# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
Worker-pool helper shared by the per-q solvers and the suite runner.

All inputs handed to workers are immutable, so a thread pool is enough; the
results come back in input order regardless of completion order.
"""

import os

from joblib import Parallel, delayed

DEFAULT_WORKERS = 1


def worker_count(workers=None):
    "Resolve an explicit worker count, or LEGENDRIAN_WORKERS, or 1."
    if workers is not None:
        return int(workers)
    value = os.environ.get("LEGENDRIAN_WORKERS")
    if value:
        return int(value)
    return DEFAULT_WORKERS


def parallel_map(function, items, workers=None):
    """
    Apply C{function} to every item, preserving order.

    @param workers: Number of worker threads; 1 runs serially in the calling
                    thread, -1 uses every core.
    """
    items = list(items)
    n_jobs = worker_count(workers)
    if n_jobs == 1 or len(items) < 2:
        return [function(item) for item in items]
    return Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(function)(item) for item in items)
