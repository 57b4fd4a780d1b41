"""Hot kernels with a compiled core and a pure-Python fallback.

The compiled extension is used when it was built and ``GCONE_PURE_PYTHON``
is unset. Inputs that could overflow 64-bit arithmetic always go to the
Python path, so results are exact either way.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from . import _pure

try:
    if os.environ.get("GCONE_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    import numpy as np

    from . import _ext
except ImportError:
    _ext = None

BACKEND = "cython" if _ext is not None else "python"

_INT64_SAFE = 1 << 62
# below this many pair/ray checks the array conversion costs more than it saves
_ADJ_MIN_WORK = 4096

_forced = None


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _ext is not None else [])


@contextmanager
def use_backend(name: str):
    """Force a backend inside the block (tests and benchmarks)."""
    global _forced
    if name not in available_backends():
        raise ValueError(f"backend {name!r} is not available")
    old, _forced = _forced, name
    try:
        yield
    finally:
        _forced = old


def _want_ext(work: int) -> bool:
    if _ext is None or _forced == "python":
        return False
    return _forced == "cython" or work >= _ADJ_MIN_WORK


def _fits_int64(A, b, lo, hi) -> bool:
    bound = max((abs(x) for x in b), default=0)
    reach = [max(abs(a), abs(h)) for a, h in zip(lo, hi)]
    for row in A:
        bound = max(bound, sum(abs(a) * r for a, r in zip(row, reach)) + max(map(abs, b), default=0))
    return bound < _INT64_SAFE


def box_points(A, b, lo, hi) -> list[tuple]:
    """Integer points of the box ``[lo, hi]`` with ``A @ t >= b``."""
    if _ext is not None and _forced != "python" and _fits_int64(A, b, lo, hi):
        k = len(lo)
        A_arr = np.array(A, dtype=np.int64).reshape(len(A), k)
        return _ext.box_points(A_arr, np.array(b, dtype=np.int64),
                               np.array(lo, dtype=np.int64), np.array(hi, dtype=np.int64))
    return _pure.box_points(A, b, lo, hi)


def adjacent_pairs(masks, pos, neg, min_common) -> list[tuple]:
    """Adjacent (pos, neg) ray pairs for one double-description step."""
    if not pos or not neg:
        return []
    if _want_ext(len(pos) * len(neg) * len(masks)):
        words = max(1, (max(m.bit_length() for m in masks) + 63) // 64)
        Z = np.zeros((len(masks), words), dtype=np.uint64)
        mask64 = (1 << 64) - 1
        for i, m in enumerate(masks):
            for w in range(words):
                Z[i, w] = (m >> (64 * w)) & mask64
        return _ext.adjacent_pairs(Z, np.array(pos, dtype=np.int64),
                                   np.array(neg, dtype=np.int64), int(min_common))
    return _pure.adjacent_pairs(masks, pos, neg, min_common)
