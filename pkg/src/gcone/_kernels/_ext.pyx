# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Same contracts as ``_pure``; callers guarantee int64 safety."""

import numpy as np
from libc.stdint cimport int64_t, uint64_t


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int64_t _floordiv(int64_t a, int64_t b) nogil:
    cdef int64_t q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline int64_t _ceildiv(int64_t a, int64_t b) nogil:
    return -_floordiv(-a, b)


def box_points(const int64_t[:, :] A, const int64_t[:] b,
               const int64_t[:] lo, const int64_t[:] hi):
    cdef Py_ssize_t m = A.shape[0]
    cdef Py_ssize_t k = lo.shape[0]
    cdef Py_ssize_t i, j, last
    cdef int64_t s, rhs, a, low, high, c, x
    cdef bint done
    out = []
    if k == 0:
        for i in range(m):
            if b[i] > 0:
                return out
        out.append(())
        return out
    last = k - 1
    for j in range(last):
        if lo[j] > hi[j]:
            return out
    t = np.array(lo, dtype=np.int64)
    cdef int64_t[:] tv = t
    while True:
        low = lo[last]
        high = hi[last]
        for i in range(m):
            s = 0
            for j in range(last):
                s += A[i, j] * tv[j]
            rhs = b[i] - s
            a = A[i, last]
            if a > 0:
                c = _ceildiv(rhs, a)
                if c > low:
                    low = c
            elif a < 0:
                c = _floordiv(rhs, a)
                if c < high:
                    high = c
            elif rhs > 0:
                high = low - 1
            if low > high:
                break
        if low <= high:
            head = tuple([int(tv[j]) for j in range(last)])
            for x in range(low, high + 1):
                out.append(head + (int(x),))
        # odometer over the leading coordinates
        done = True
        j = last - 1
        while j >= 0:
            if tv[j] < hi[j]:
                tv[j] += 1
                done = False
                break
            tv[j] = lo[j]
            j -= 1
        if done:
            break
    return out


def adjacent_pairs(const uint64_t[:, :] Z, const int64_t[:] pos,
                   const int64_t[:] neg, int min_common):
    cdef Py_ssize_t R = Z.shape[0]
    cdef Py_ssize_t W = Z.shape[1]
    cdef Py_ssize_t a, bq, r, w, p, q
    cdef int cnt
    cdef bint adjacent, contained
    common_arr = np.zeros(W, dtype=np.uint64)
    cdef uint64_t[:] common = common_arr
    out = []
    for a in range(pos.shape[0]):
        p = pos[a]
        for bq in range(neg.shape[0]):
            q = neg[bq]
            cnt = 0
            for w in range(W):
                common[w] = Z[p, w] & Z[q, w]
                cnt += __builtin_popcountll(common[w])
            if cnt < min_common:
                continue
            adjacent = True
            for r in range(R):
                if r == p or r == q:
                    continue
                contained = True
                for w in range(W):
                    if common[w] & ~Z[r, w]:
                        contained = False
                        break
                if contained:
                    adjacent = False
                    break
            if adjacent:
                out.append((int(p), int(q)))
    return out
