# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: restricted-growth enumeration and the dual scan."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int32_t, int64_t

cnp.import_array()


def rgs_block_masks(int n, int k, Py_ssize_t count):
    out = np.zeros((count, k), dtype=np.uint64)
    if count == 0:
        return out
    cdef uint64_t[:, ::1] o = out
    cdef int a[64]
    cdef int used[64]
    cdef int i, j, v, m, u, free, pos, nb
    cdef Py_ssize_t row = 0
    for j in range(n - k + 1):
        a[j] = 0
    for j in range(1, k):
        a[n - k + j] = j
    while True:
        if row >= count:
            raise AssertionError("enumeration overran the expected count")
        for j in range(n):
            o[row, a[j]] |= (<uint64_t>1) << j
        row += 1
        m = 0
        for j in range(n):
            if a[j] + 1 > m:
                m = a[j] + 1
            used[j] = m
        i = n - 1
        while i >= 1:
            v = a[i] + 1
            if v <= used[i - 1] and v < k:
                u = used[i - 1] if used[i - 1] > v + 1 else v + 1
                if n - 1 - i >= k - u:
                    a[i] = v
                    free = (n - 1 - i) - (k - u)
                    pos = i + 1
                    for j in range(free):
                        a[pos] = 0
                        pos += 1
                    for nb in range(u, k):
                        a[pos] = nb
                        pos += 1
                    break
            i -= 1
        if i < 1:
            break
    if row != count:
        raise AssertionError(f"enumerated {row} partitions, expected {count}")
    return out


def dual_mask(const uint64_t[:, ::1] bits, const int32_t[:, ::1] fam_ids, int t, Py_ssize_t nbits):
    cdef Py_ssize_t W = bits.shape[1]
    cdef Py_ssize_t F = fam_ids.shape[0]
    cdef Py_ssize_t K = fam_ids.shape[1]
    acc_arr = np.empty(W, dtype=np.uint64)
    cdef uint64_t[::1] acc = acc_arr
    cdef uint64_t lv[64]
    cdef uint64_t x, alive
    cdef Py_ssize_t f, w, j
    cdef int lvl
    cdef int32_t b
    if t < 1 or t > 64:
        raise ValueError("t must be in 1..64")
    for w in range(W):
        acc[w] = ~(<uint64_t>0)
    if nbits % 64:
        acc[W - 1] = ((<uint64_t>1) << (nbits % 64)) - 1
    with nogil:
        for f in range(F):
            alive = 0
            for w in range(W):
                if acc[w] == 0:
                    continue
                for lvl in range(t):
                    lv[lvl] = 0
                for j in range(K):
                    b = fam_ids[f, j]
                    if b < 0:
                        continue
                    x = bits[b, w]
                    for lvl in range(t - 1, 0, -1):
                        lv[lvl] |= lv[lvl - 1] & x
                    lv[0] |= x
                acc[w] &= lv[t - 1]
                alive |= acc[w]
            if alive == 0:
                break
    return int.from_bytes(acc_arr.tobytes(), "little")


def shared_counts(const uint64_t[:, ::1] member_masks, probe):
    cdef Py_ssize_t N = member_masks.shape[0]
    cdef Py_ssize_t K = member_masks.shape[1]
    cdef Py_ssize_t P, i, j, q
    pa = np.ascontiguousarray(np.asarray([b for b in probe if b], dtype=np.uint64))
    cdef uint64_t[::1] p = pa
    P = pa.shape[0]
    out = np.zeros(N, dtype=np.int64)
    cdef int64_t[::1] o = out
    cdef uint64_t x
    with nogil:
        for i in range(N):
            for j in range(K):
                x = member_masks[i, j]
                if x == 0:
                    continue
                for q in range(P):
                    if p[q] == x:
                        o[i] += 1
                        break
    return out
