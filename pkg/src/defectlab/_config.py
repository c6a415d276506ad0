"""Environment switches.

DEFECTLAB_BACKEND   ``numba`` (default when importable) or ``numpy``
DEFECTLAB_NO_NUMBA  any truthy value forces the numpy path
DEFECTLAB_THREADS   cap on worker processes / numba threads (default 1)
"""
import os
from concurrent.futures import ProcessPoolExecutor

_TRUTHY = {"1", "true", "yes", "on"}


def numba_requested():
    if os.environ.get("DEFECTLAB_NO_NUMBA", "").strip().lower() in _TRUTHY:
        return False
    return os.environ.get("DEFECTLAB_BACKEND", "numba").strip().lower() != "numpy"


def thread_cap():
    raw = os.environ.get("DEFECTLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def pmap(fn, items):
    """Ordered map; fans out to processes only when DEFECTLAB_THREADS > 1."""
    items = list(items)
    workers = min(thread_cap(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))
