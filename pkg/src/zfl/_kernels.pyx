# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled closure kernels. The subset enumeration and the batched
closure are the hot paths of the whole package; everything else is thin
Python around them."""

import numpy as np

cimport cython
from libc.stdint cimport int64_t, uint8_t, uint64_t
from libc.stdlib cimport free, malloc

BACKEND = "compiled"


cdef extern from *:
    """
    static inline int zfl_popcount(uint64_t x) { return __builtin_popcountll(x); }
    static inline int zfl_ctz(uint64_t x) { return __builtin_ctzll(x); }
    """
    int zfl_popcount(uint64_t x) nogil
    int zfl_ctz(uint64_t x) nogil


cdef inline uint64_t _closure_w1(const uint64_t* rows, int n, uint64_t blue,
                                 int* whitedeg, int* stack) nogil:
    """Single-word closure (n <= 64). Returns the final blue mask."""
    cdef int sp = 0
    cdef int v, u, w, wd
    cdef uint64_t b, low, white, nb
    b = blue
    while b:
        low = b & (~b + 1)
        v = zfl_ctz(low)
        b ^= low
        wd = zfl_popcount(rows[v] & ~blue)
        whitedeg[v] = wd
        if wd == 1:
            stack[sp] = v
            sp += 1
    while sp:
        sp -= 1
        v = stack[sp]
        if whitedeg[v] != 1:
            continue
        white = rows[v] & ~blue
        u = zfl_ctz(white)
        blue |= white
        whitedeg[v] = 0
        wd = zfl_popcount(rows[u] & ~blue)
        whitedeg[u] = wd
        if wd == 1:
            stack[sp] = u
            sp += 1
        nb = rows[u] & blue
        nb &= ~((<uint64_t>1) << v)
        while nb:
            low = nb & (~nb + 1)
            w = zfl_ctz(low)
            nb ^= low
            whitedeg[w] -= 1
            if whitedeg[w] == 1:
                stack[sp] = w
                sp += 1
    return blue


def count_zfs_by_size(adj, long long start, long long stop):
    """Count zero forcing sets among subsets start <= s < stop of an
    n <= 64 vertex graph, bucketed by popcount."""
    cdef const uint64_t[:, ::1] aw = np.ascontiguousarray(adj, dtype=np.uint64)
    cdef int n = aw.shape[0]
    if aw.shape[1] != 1:
        raise ValueError("subset enumeration requires n <= 64")
    out = np.zeros(n + 1, dtype=np.int64)
    cdef int64_t[::1] counts = out
    cdef const uint64_t* rows = &aw[0, 0]
    cdef uint64_t full = ((<uint64_t>1) << n) - 1 if n < 64 else ~(<uint64_t>0)
    cdef long long s0 = start if start > 0 else 1
    cdef long long s
    cdef uint64_t sub
    cdef int* whitedeg = <int*>malloc(n * sizeof(int))
    cdef int* stack = <int*>malloc((n + 1) * sizeof(int))
    if whitedeg == NULL or stack == NULL:
        free(whitedeg); free(stack)
        raise MemoryError()
    try:
        with nogil:
            for s in range(s0, stop):
                sub = <uint64_t>s
                if _closure_w1(rows, n, sub, whitedeg, stack) == full:
                    counts[zfl_popcount(sub)] += 1
    finally:
        free(whitedeg)
        free(stack)
    return out


cdef inline void _closure_wide(const uint64_t* adj, int n, int w,
                               uint64_t* blue, int* whitedeg, int* stack) nogil:
    """General closure on w-word rows; blue is updated in place."""
    cdef int sp = 0
    cdef int v, u, x, wd, i, base
    cdef uint64_t word, low
    for v in range(n):
        if blue[v >> 6] >> (v & 63) & 1:
            wd = 0
            base = v * w
            for i in range(w):
                wd += zfl_popcount(adj[base + i] & ~blue[i])
            whitedeg[v] = wd
            if wd == 1:
                stack[sp] = v
                sp += 1
    while sp:
        sp -= 1
        v = stack[sp]
        if whitedeg[v] != 1:
            continue
        u = -1
        base = v * w
        for i in range(w):
            word = adj[base + i] & ~blue[i]
            if word:
                u = (i << 6) + zfl_ctz(word)
                break
        blue[u >> 6] |= (<uint64_t>1) << (u & 63)
        whitedeg[v] = 0
        wd = 0
        base = u * w
        for i in range(w):
            wd += zfl_popcount(adj[base + i] & ~blue[i])
        whitedeg[u] = wd
        if wd == 1:
            stack[sp] = u
            sp += 1
        for i in range(w):
            word = adj[base + i] & blue[i]
            while word:
                low = word & (~word + 1)
                x = (i << 6) + zfl_ctz(low)
                word ^= low
                if x != u and x != v:
                    whitedeg[x] -= 1
                    if whitedeg[x] == 1:
                        stack[sp] = x
                        sp += 1


def closure_batch(adj, masks):
    """Closure of each mask row; returns the final blue masks."""
    cdef const uint64_t[:, ::1] aw = np.ascontiguousarray(adj, dtype=np.uint64)
    cdef const uint64_t[:, ::1] mw = np.ascontiguousarray(masks, dtype=np.uint64)
    cdef int n = aw.shape[0]
    cdef int w = aw.shape[1]
    if mw.shape[1] != w:
        raise ValueError("mask width does not match adjacency width")
    out = np.array(mw, dtype=np.uint64, copy=True)
    cdef uint64_t[:, ::1] ow = out
    cdef Py_ssize_t m = mw.shape[0]
    cdef Py_ssize_t r
    cdef uint64_t last_full
    if n & 63:
        last_full = ((<uint64_t>1) << (n & 63)) - 1
    else:
        last_full = ~(<uint64_t>0)
    cdef int* whitedeg = <int*>malloc(n * sizeof(int))
    cdef int* stack = <int*>malloc((n + 1) * sizeof(int))
    if whitedeg == NULL or stack == NULL:
        free(whitedeg); free(stack)
        raise MemoryError()
    try:
        with nogil:
            for r in range(m):
                ow[r, w - 1] &= last_full
                _closure_wide(&aw[0, 0], n, w, &ow[r, 0], whitedeg, stack)
    finally:
        free(whitedeg)
        free(stack)
    return out


def is_zfs_batch(adj, masks):
    """1 where the mask row is a zero forcing set, else 0."""
    cdef const uint64_t[:, ::1] aw = np.ascontiguousarray(adj, dtype=np.uint64)
    cdef const uint64_t[:, ::1] mw = np.ascontiguousarray(masks, dtype=np.uint64)
    cdef int n = aw.shape[0]
    cdef int w = aw.shape[1]
    if mw.shape[1] != w:
        raise ValueError("mask width does not match adjacency width")
    out = np.zeros(mw.shape[0], dtype=np.uint8)
    cdef uint8_t[::1] ov = out
    cdef Py_ssize_t m = mw.shape[0]
    cdef Py_ssize_t r
    cdef int i, ok
    cdef uint64_t* blue = <uint64_t*>malloc(w * sizeof(uint64_t))
    cdef int* whitedeg = <int*>malloc(n * sizeof(int))
    cdef int* stack = <int*>malloc((n + 1) * sizeof(int))
    cdef uint64_t last_full
    if blue == NULL or whitedeg == NULL or stack == NULL:
        free(blue); free(whitedeg); free(stack)
        raise MemoryError()
    if n & 63:
        last_full = ((<uint64_t>1) << (n & 63)) - 1
    else:
        last_full = ~(<uint64_t>0)
    try:
        with nogil:
            for r in range(m):
                for i in range(w):
                    blue[i] = mw[r, i]
                blue[w - 1] &= last_full
                _closure_wide(&aw[0, 0], n, w, blue, whitedeg, stack)
                ok = 1
                for i in range(w - 1):
                    if blue[i] != ~(<uint64_t>0):
                        ok = 0
                        break
                if ok and blue[w - 1] != last_full:
                    ok = 0
                ov[r] = ok
    finally:
        free(blue)
        free(whitedeg)
        free(stack)
    return out
