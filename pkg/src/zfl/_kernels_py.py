"""Pure-Python closure kernels. Same contract as the compiled module in
_kernels.pyx; adjacency and set arguments are uint64 word matrices, vertex
sets are one row each. Internally this backend works on Python ints, which
are the fastest bitset available without compiling."""

from __future__ import annotations

import numpy as np

BACKEND = "python"
_WORD = 64


def _rows_from_words(adj: np.ndarray) -> list[int]:
    n, w = adj.shape
    rows = []
    for v in range(n):
        row = 0
        for i in range(w):
            row |= int(adj[v, i]) << (_WORD * i)
        rows.append(row)
    return rows


def _mask_from_words(row: np.ndarray) -> int:
    mask = 0
    for i, word in enumerate(row.tolist()):
        mask |= int(word) << (_WORD * i)
    return mask


def _closure_int(rows: list[int], n: int, blue: int) -> int:
    """Iterated color change rule: a blue vertex with exactly one white
    neighbor colors it. Returns the final blue mask."""
    blue &= (1 << n) - 1
    whitedeg = [0] * n
    stack = []
    b = blue
    while b:
        low = b & -b
        v = low.bit_length() - 1
        b ^= low
        wd = (rows[v] & ~blue).bit_count()
        whitedeg[v] = wd
        if wd == 1:
            stack.append(v)
    while stack:
        v = stack.pop()
        if whitedeg[v] != 1:
            continue
        white = rows[v] & ~blue
        u = white.bit_length() - 1
        blue |= white
        whitedeg[v] = 0
        nb = rows[u]
        wd = (nb & ~blue).bit_count()
        whitedeg[u] = wd
        if wd == 1:
            stack.append(u)
        nb &= blue & ~(1 << v)
        while nb:
            low = nb & -nb
            w = low.bit_length() - 1
            nb ^= low
            whitedeg[w] -= 1
            if whitedeg[w] == 1:
                stack.append(w)
    return blue


def count_zfs_by_size(adj: np.ndarray, start: int, stop: int) -> np.ndarray:
    """Count zero forcing sets among the subsets start <= s < stop, bucketed
    by popcount. Subsets are encoded as integers; requires n <= 64."""
    n, w = adj.shape
    if w != 1:
        raise ValueError("subset enumeration requires n <= 64")
    rows = [int(x) for x in adj[:, 0]]
    full = (1 << n) - 1
    counts = [0] * (n + 1)
    rng = range(max(start, 1), stop)  # the empty set never forces for n >= 1
    for s in rng:
        if _closure_int(rows, n, s) == full:
            counts[s.bit_count()] += 1
    return np.array(counts, dtype=np.int64)


def closure_batch(adj: np.ndarray, masks: np.ndarray) -> np.ndarray:
    """Closure of each mask row; returns final blue masks, same shape."""
    n, w = adj.shape
    rows = _rows_from_words(adj)
    out = np.empty_like(masks)
    mask64 = (1 << _WORD) - 1
    for r in range(masks.shape[0]):
        blue = _closure_int(rows, n, _mask_from_words(masks[r]))
        for i in range(w):
            out[r, i] = (blue >> (_WORD * i)) & mask64
    return out


def is_zfs_batch(adj: np.ndarray, masks: np.ndarray) -> np.ndarray:
    """1 where the mask row is a zero forcing set, else 0."""
    n, w = adj.shape
    rows = _rows_from_words(adj)
    full = (1 << n) - 1
    out = np.empty(masks.shape[0], dtype=np.uint8)
    for r in range(masks.shape[0]):
        blue = _closure_int(rows, n, _mask_from_words(masks[r]))
        out[r] = 1 if blue == full else 0
    return out
