"""The color change rule: closures with reproducible force records, zero
forcing set tests, forcing chains, reversals, and the zero forcing number."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import kernels
from .bitset import bit_list, bits, masks_to_words, to_mask
from .graphs import Graph

ZF_NUMBER_CAP = 32


@dataclass(frozen=True)
class ForcingRecord:
    """Chronological list of forces from an initial blue set.

    forces[i] = (forcer, forced). final_blue is the closure; reversal is
    the set of final-blue vertices that never perform a force.
    """

    forces: tuple[tuple[int, int], ...]
    final_blue: int
    reversal: int

    def to_json(self) -> str:
        return json.dumps({
            "forces": [[f, t] for f, t in self.forces],
            "blue": bit_list(self.final_blue),
            "reversal": bit_list(self.reversal),
        })

    @classmethod
    def from_json(cls, text: str) -> "ForcingRecord":
        obj = json.loads(text)
        return cls(
            forces=tuple((int(f), int(t)) for f, t in obj["forces"]),
            final_blue=to_mask(obj["blue"]),
            reversal=to_mask(obj["reversal"]),
        )


def closure(g: Graph, blue: int | Iterable[int]) -> ForcingRecord:
    """Run the forcing process to its fixpoint and record every force.

    At each step the lowest-index vertex able to force acts, so the record
    is reproducible. The final blue set does not depend on this order.
    """
    mask = to_mask(blue, g.n)
    rows = g.rows
    forces = []
    while True:
        for v in bits(mask):
            white = rows[v] & ~mask
            if white and white & (white - 1) == 0:
                forces.append((v, white.bit_length() - 1))
                mask |= white
                break
        else:
            break
    forcers = to_mask(f for f, _ in forces)
    return ForcingRecord(tuple(forces), mask, mask & ~forcers)


def closure_mask(g: Graph, blue: int | Iterable[int]) -> int:
    """Final blue mask only, via the fast kernel."""
    mask = to_mask(blue, g.n)
    words = masks_to_words([mask], g.n)
    out = kernels.closure_batch(g.words, words)
    final = 0
    for i, word in enumerate(out[0].tolist()):
        final |= int(word) << (64 * i)
    return final


def is_zfs(g: Graph, blue: int | Iterable[int]) -> bool:
    """True when iterated forcing from the given set colors every vertex."""
    mask = to_mask(blue, g.n)
    words = masks_to_words([mask], g.n)
    return bool(kernels.is_zfs_batch(g.words, words)[0])


def is_zfs_many(g: Graph, blues: Iterable[int]) -> np.ndarray:
    """Vectorized zero-forcing-set test over int masks."""
    words = masks_to_words(blues, g.n)
    return kernels.is_zfs_batch(g.words, words)


def zero_forcing_number(g: Graph, cap: int = ZF_NUMBER_CAP) -> int:
    """Minimum size of a zero forcing set, by exhaustive search over
    cardinalities in increasing order. Practical for n <= 32."""
    if g.n > cap:
        raise ValueError(f"zero_forcing_number is capped at n <= {cap}")
    mind = g.min_degree()
    if mind == 0:
        upper = g.n
    else:
        upper = g.n - 1  # any n-1 vertices force when there is no isolated vertex
    # no set smaller than the minimum degree can start a force
    start = max(1, mind)
    for k in range(start, upper):
        batch = []
        for comb in itertools.combinations(range(g.n), k):
            batch.append(to_mask(comb))
            if len(batch) == 4096:
                if is_zfs_many(g, batch).any():
                    return k
                batch = []
        if batch and is_zfs_many(g, batch).any():
            return k
    return upper


def maximal_forcing_chains(rec: ForcingRecord) -> list[tuple[int, ...]]:
    """Maximal forcing chains of a record. Chains partition the final blue
    set; every chain ends at a reversal vertex."""
    succ = dict(rec.forces)
    forced = to_mask(t for _, t in rec.forces)
    chains = []
    for head in bits(rec.final_blue & ~forced):
        chain = [head]
        while chain[-1] in succ:
            chain.append(succ[chain[-1]])
        chains.append(tuple(chain))
    return chains
