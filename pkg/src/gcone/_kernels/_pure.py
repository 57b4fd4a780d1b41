"""Pure-Python reference kernels. The Cython module mirrors these exactly."""

from itertools import product


def _floordiv(a, b):
    return a // b


def _ceildiv(a, b):
    return -((-a) // b)


def box_points(A, b, lo, hi):
    """Integer points ``t`` with ``lo <= t <= hi`` and ``A @ t >= b`` row-wise.

    The last coordinate is solved as an interval for each setting of the
    others, so the scan costs one pass over the box with one axis removed.
    Output is lexicographic.
    """
    k = len(lo)
    m = len(A)
    if k == 0:
        return [()] if all(0 >= bi for bi in b) else []
    last = k - 1
    out = []
    heads = product(*(range(lo[j], hi[j] + 1) for j in range(last)))
    for head in heads:
        low, high = lo[last], hi[last]
        for i in range(m):
            row = A[i]
            s = 0
            for j in range(last):
                s += row[j] * head[j]
            rhs = b[i] - s
            a = row[last]
            if a > 0:
                c = _ceildiv(rhs, a)
                if c > low:
                    low = c
            elif a < 0:
                f = _floordiv(rhs, a)
                if f < high:
                    high = f
            elif rhs > 0:
                high = low - 1
            if low > high:
                break
        for x in range(low, high + 1):
            out.append(head + (x,))
    return out


def adjacent_pairs(masks, pos, neg, min_common):
    """Combinatorial adjacency test of the double description method.

    ``masks[i]`` is the set of tight constraints of ray ``i`` as an int
    bitmask. A pair ``(p, q)`` is adjacent when its common tight set has at
    least ``min_common`` elements and is contained in no other ray's set.
    """
    out = []
    nrays = len(masks)
    for p in pos:
        zp = masks[p]
        for q in neg:
            common = zp & masks[q]
            if common.bit_count() < min_common:
                continue
            for r in range(nrays):
                if r != p and r != q and common & ~masks[r] == 0:
                    break
            else:
                out.append((p, q))
    return out
