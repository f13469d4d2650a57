"""Exact counting of zero forcing sets by size, the probability that a
Bernoulli(p) vertex set forces, closed forms for paths and cliques, and
degree-based upper and lower bounds on counts and probabilities."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graphs import Graph
from .kernels import count_zfs_partitioned

DEFAULT_ENUM_CAP = 24
HARD_ENUM_CAP = 30


class EnumerationCapError(ValueError):
    """Requested exact enumeration above the configured vertex cap."""


@dataclass(frozen=True)
class ZfPolynomial:
    """Exact counts z[k] of zero forcing sets of each size k = 0..n."""

    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.n + 1:
            raise ValueError("need one coefficient per size 0..n")

    def prob(self, p: float) -> float:
        """Probability that a Bernoulli(p) vertex set is zero forcing."""
        if not 0.0 <= p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        q = 1.0 - p
        total = 0.0
        for k in range(1, self.n + 1):
            if self.coeffs[k]:
                total += self.coeffs[k] * p ** k * q ** (self.n - k)
        return min(total, 1.0)

    def prob_exact(self, p: Fraction) -> Fraction:
        """Same sum in exact rational arithmetic."""
        p = Fraction(p)
        if not 0 <= p <= 1:
            raise ValueError("p must lie in [0, 1]")
        q = 1 - p
        total = Fraction(0)
        for k in range(1, self.n + 1):
            if self.coeffs[k]:
                total += self.coeffs[k] * p ** k * q ** (self.n - k)
        return total

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "z": [str(c) for c in self.coeffs]})

    @classmethod
    def from_json(cls, text: str) -> "ZfPolynomial":
        obj = json.loads(text)
        return cls(int(obj["n"]), tuple(int(c) for c in obj["z"]))

    def csv_rows(self) -> list[tuple[int, int]]:
        return [(k, c) for k, c in enumerate(self.coeffs)]


def zf_polynomial_exact(g: Graph, max_n: int = DEFAULT_ENUM_CAP,
                        threads: int | None = None) -> ZfPolynomial:
    """Count zero forcing sets of every size by enumerating all 2^n subsets
    with the closure kernel. max_n can be raised, but never above 30."""
    cap = min(max_n, HARD_ENUM_CAP)
    if g.n > cap:
        raise EnumerationCapError(
            f"n={g.n} exceeds the enumeration cap {cap}; "
            f"pass max_n up to {HARD_ENUM_CAP} to override the default {DEFAULT_ENUM_CAP}"
        )
    counts = count_zfs_partitioned(g.words, g.n, threads=threads)
    return ZfPolynomial(g.n, tuple(counts))


def binom(n: int, k: int) -> int:
    """Binomial coefficient that is 0 outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def zf_path_closed_form(n: int, k: int) -> int:
    """Number of zero forcing sets of size k in the n-vertex path:
    C(n, k) - C(n-k-1, k)."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    return binom(n, k) - binom(n - k - 1, k)


def zf_path_polynomial(n: int) -> ZfPolynomial:
    return ZfPolynomial(n, tuple(zf_path_closed_form(n, k) for k in range(n + 1)))


def prob_zfs_exact(poly: ZfPolynomial, p, exact: bool = False):
    """Evaluate the forcing probability from exact counts. With exact=True
    p is treated as a rational and the result is a Fraction."""
    if exact:
        return poly.prob_exact(Fraction(p))
    return poly.prob(float(p))


def prob_path(n: int, p, exact: bool = False):
    """Forcing probability for the n-vertex path without enumerating.

    A set works iff it contains an endpoint or two consecutive vertices,
    so the failure probability is (1-p)^2 times the probability that the
    n-2 interior vertices contain no adjacent pair, computed by a linear
    recurrence. Stable for n in the hundreds and beyond.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if exact:
        p = Fraction(p)
        one = Fraction(1)
    else:
        p = float(p)
        one = 1.0
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    if n == 1:
        return p
    q = one - p
    # no_pair[m]: probability m Bernoulli(p) slots in a row have no two
    # adjacent successes; no_pair[m] = q*no_pair[m-1] + p*q*no_pair[m-2],
    # no_pair[0] = no_pair[1] = 1. Failure needs both endpoints out and no
    # adjacent pair among the n-2 interior slots.
    prev2 = one
    prev1 = one
    for _ in range(n - 3):
        prev2, prev1 = prev1, q * prev1 + p * q * prev2
    return one - q * q * prev1


def prob_kn_closed_form(n: int, p, exact: bool = False):
    """Forcing probability for the complete graph on n >= 2 vertices:
    the chance the random set has at least n-1 vertices, n(1-p)p^(n-1) + p^n."""
    if n < 2:
        raise ValueError("need n >= 2")
    if exact:
        p = Fraction(p)
    else:
        p = float(p)
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    return n * (1 - p) * p ** (n - 1) + p ** n


def prob_empty_graph(n: int, p, exact: bool = False):
    """Forcing probability for n isolated vertices: every vertex must be
    picked, so p^n."""
    if n < 1:
        raise ValueError("need n >= 1")
    p = Fraction(p) if exact else float(p)
    return p ** n


# ---------------------------------------------------------------------------
# upper and lower bounds


def degree_sum_bound(g: Graph, p: float) -> float:
    """sum over v of d(v) * p^d(v). Upper-bounds the forcing probability
    for any graph with at least one edge (the bound may exceed 1)."""
    if g.edge_count == 0:
        raise ValueError("degree sum bound needs at least one edge")
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    return sum(d * p ** d for d in g.degrees if d)


def min_degree_bound(g: Graph, p: float) -> float:
    """delta * n * p^delta for minimum degree delta >= 1. Upper-bounds the
    forcing probability."""
    delta = g.min_degree()
    if delta < 1:
        raise ValueError("minimum degree bound needs no isolated vertices")
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    return delta * g.n * p ** delta


def few_low_degree_bound(g: Graph, p: float, d: int, N: int) -> float:
    """4pN + d*n*p^d, valid when the graph has no isolated vertex, at most
    N^k vertices of each degree k < d, and p <= e^(-1/d)."""
    if d < 1 or N < 0:
        raise ValueError("need d >= 1 and N >= 0")
    degs = g.degrees
    if min(degs) < 1:
        raise ValueError("bound needs no isolated vertices")
    for k in range(1, d):
        if sum(1 for x in degs if x == k) > N ** k:
            raise ValueError(f"more than N^{k} vertices of degree {k}")
    if not 0 <= p <= math.exp(-1.0 / d):
        raise ValueError("bound needs p <= e^(-1/d)")
    return 4 * p * N + d * g.n * p ** d


def degree_count_bound(g: Graph, k: int) -> int:
    """sum over v of d(v) * C(n - d(v), k - d(v)), an upper bound on the
    number of zero forcing sets of size k."""
    if g.edge_count == 0:
        raise ValueError("degree count bound needs at least one edge")
    if not 0 <= k <= g.n:
        raise ValueError("need 0 <= k <= n")
    return sum(d * binom(g.n - d, k - d) for d in g.degrees)


def path_count_lower_bound(n: int, k: int) -> Fraction:
    """(k^2 / (n + k^2)) * C(n, k), a lower bound on the number of zero
    forcing sets of size k in the n-vertex path."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    return Fraction(k * k, n + k * k) * binom(n, k)


def tree_count_bound(n: int, k: int) -> Fraction:
    """(13 k^4 / n^2) * C(n, k), an upper bound on the number of zero
    forcing sets of size k for any n-vertex tree other than the path."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    return Fraction(13 * k ** 4, n * n) * binom(n, k)


def small_k_range(n: int, delta: int) -> int:
    """Largest k for which minimum degree delta >= 3 guarantees that no
    n-vertex graph has more size-k zero forcing sets than the path:
    floor((2*delta)^(-1/delta) * n^(1 - 1/delta))."""
    if delta < 3:
        raise ValueError("need delta >= 3")
    if n < 1:
        raise ValueError("need n >= 1")
    return math.floor((2 * delta) ** (-1.0 / delta) * n ** (1.0 - 1.0 / delta))


def high_min_degree_covers_all(n: int, delta: int) -> bool:
    """True when delta >= log2(n) + 2*log2(log2(n)), the minimum-degree
    condition under which the path dominates the count for every k."""
    if n < 2:
        return True
    return delta >= math.log2(n) + 2 * math.log2(math.log2(n))


# ---------------------------------------------------------------------------
# closed-form comparators for sequences of vertices


def endpoint_hit_probability(p: float) -> float:
    """Probability that at least one of two given vertices is picked."""
    return 1.0 - (1.0 - p) ** 2


def consecutive_pair_lower_bound(m: int, p: float) -> float:
    """1 - (1 - p^2)^floor((m-1)/2), a lower bound on the probability that
    some adjacent pair among m vertices in a row is fully picked."""
    if m < 1:
        raise ValueError("need m >= 1")
    return 1.0 - (1.0 - p * p) ** ((m - 1) // 2)


def verify_coeff_invariants(poly: ZfPolynomial) -> None:
    """Raise if basic coefficient constraints fail: 0 <= z[k] <= C(n,k),
    z[0] = 0, z[n] = 1, and once z[k] hits C(n,k) it stays there."""
    n = poly.n
    saturated = False
    for k, c in enumerate(poly.coeffs):
        top = binom(n, k)
        if not 0 <= c <= top:
            raise AssertionError(f"z[{k}]={c} outside [0, C({n},{k})]")
        if saturated and c != top:
            raise AssertionError(f"saturation broken at k={k}")
        if c == top and k >= 1:
            saturated = True
    if poly.coeffs[0] != 0:
        raise AssertionError("z[0] must be 0")
    if poly.coeffs[n] != 1:
        raise AssertionError("z[n] must be 1")
