"""Split permutation sweeps by the label of element 0 across processes."""
import os
from concurrent.futures import ProcessPoolExecutor

from . import kernels


def _run(method, n, rows, cols, corners, first):
    plan = kernels.Plan(n, rows, cols, corners)
    return getattr(plan, method)(first)


def default_workers():
    try:
        return max(1, int(os.environ.get("NMU_WORKERS", "1")))
    except ValueError:
        return 1


def sweep(plan, method, workers=None):
    """Run ``plan.<method>(first)`` for each possible first label.

    Returns the per-partition results in order of ``first`` so that merged
    output never depends on scheduling. With one worker (or a single
    element) the sweep runs in-process without partitioning.
    """
    workers = default_workers() if workers is None else workers
    if workers <= 1 or plan.n <= 1:
        return [getattr(plan, method)(0)]
    firsts = range(1, plan.n + 1)
    args = (plan.n, plan.rows, plan.cols, plan.corners)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run, method, *args, f) for f in firsts]
        return [f.result() for f in futures]
