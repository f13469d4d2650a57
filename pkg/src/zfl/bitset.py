"""Bit-vector helpers. Vertex sets are plain Python ints used as bitmasks;
bit v set means vertex v is in the set."""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

WORD = 64
_WORD_MASK = (1 << WORD) - 1


def nwords(n: int) -> int:
    return (n + WORD - 1) // WORD


def to_mask(vertices: int | Iterable[int] | None, n: int | None = None) -> int:
    """Coerce an int mask or an iterable of vertex indices to an int mask."""
    if vertices is None:
        return 0
    if isinstance(vertices, int):
        mask = vertices
    else:
        mask = 0
        for v in vertices:
            mask |= 1 << v
    if n is not None and mask >> n:
        raise ValueError(f"vertex set has members >= n={n}")
    return mask


def bits(mask: int) -> Iterator[int]:
    """Iterate set bit positions in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bit_list(mask: int) -> list[int]:
    return list(bits(mask))


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_to_words(mask: int, w: int) -> np.ndarray:
    out = np.empty(w, dtype=np.uint64)
    for i in range(w):
        out[i] = (mask >> (WORD * i)) & _WORD_MASK
    return out


def words_to_mask(words: np.ndarray) -> int:
    mask = 0
    for i, word in enumerate(words.tolist()):
        mask |= int(word) << (WORD * i)
    return mask


def masks_to_words(masks: Iterable[int], n: int) -> np.ndarray:
    """Pack int masks into an (m, nwords(n)) uint64 matrix."""
    w = nwords(n)
    masks = list(masks)
    out = np.empty((len(masks), w), dtype=np.uint64)
    for r, mask in enumerate(masks):
        for i in range(w):
            out[r, i] = (mask >> (WORD * i)) & _WORD_MASK
    return out


def bools_to_words(mat: np.ndarray) -> np.ndarray:
    """Pack an (m, n) boolean matrix into (m, nwords(n)) uint64 rows,
    column j mapping to bit j."""
    m, n = mat.shape
    w = nwords(n)
    padded = np.zeros((m, w * WORD), dtype=bool)
    padded[:, :n] = mat
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view(np.uint64)
