"""Bernoulli sampling of random vertex sets, Monte Carlo estimation of the
forcing probability with confidence intervals, and threshold solving by
exact bisection or stochastic bisection.

Randomness is counter-based: the uniform for (seed, stream, sample, vertex)
is a pure function of those four values, so results never depend on batch
sizes or worker counts, and raising p can only grow a sample's vertex set.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from statistics import NormalDist
from typing import Callable

import numpy as np

from . import kernels
from .bitset import bools_to_words, words_to_mask
from .graphs import Graph
from .polynomial import (
    ZfPolynomial,
    prob_empty_graph,
    prob_kn_closed_form,
    prob_path,
    zf_polynomial_exact,
)

_M64 = (1 << 64) - 1


def derive_seed(seed: int, *parts) -> int:
    """Stable 64-bit subseed from a master seed and context labels."""
    h = hashlib.sha256(repr((seed, parts)).encode()).digest()
    return int.from_bytes(h[:8], "little")


class UniformSource:
    """Deterministic uniforms indexed by (sample, coordinate).

    Each sample owns a fixed, 4-aligned block of counter positions, so any
    contiguous range of samples can be generated independently and the
    values never depend on how work is split.
    """

    def __init__(self, coords: int, seed: int, stream: int = 0):
        if coords < 1:
            raise ValueError("need at least one coordinate per sample")
        self.coords = coords
        self.blocks_per_sample = (coords + 3) // 4
        self.key = np.array([seed & _M64, stream & _M64], dtype=np.uint64)

    def uniforms(self, lo: int, hi: int) -> np.ndarray:
        """Uniforms for samples lo..hi-1, shape (hi-lo, coords)."""
        if hi < lo:
            raise ValueError("need hi >= lo")
        m = hi - lo
        offset = lo * self.blocks_per_sample
        counter = np.zeros(4, dtype=np.uint64)
        counter[0] = offset & _M64
        counter[1] = (offset >> 64) & _M64
        bitgen = np.random.Philox(key=self.key, counter=counter)
        vals = np.random.Generator(bitgen).random((m, self.blocks_per_sample * 4))
        return vals[:, : self.coords]


class SampleStream:
    """Sequential draws of Bernoulli(p) vertex sets for one graph."""

    def __init__(self, n: int, seed: int, stream: int = 0):
        self.n = n
        self.source = UniformSource(n, seed, stream)
        self.index = 0

    def draw(self, p: float) -> int:
        u = self.source.uniforms(self.index, self.index + 1)[0]
        self.index += 1
        mask = 0
        for v in range(self.n):
            if u[v] < p:
                mask |= 1 << v
        return mask


def sample_bp(g: Graph, p: float, stream: SampleStream) -> int:
    """One realization of the random set that keeps each vertex
    independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    if stream.n != g.n:
        raise ValueError("stream was created for a different vertex count")
    return stream.draw(p)


@dataclass(frozen=True)
class SampleConfig:
    p: float
    samples: int
    seed: int
    alpha: float = 0.01
    stream: int = 0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if self.samples < 1:
            raise ValueError("need at least one sample")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")


@dataclass(frozen=True)
class McEstimate:
    estimate: float
    ci_lo: float
    ci_hi: float
    successes: int
    samples: int
    seed: int
    alpha: float
    method: str


def hoeffding_halfwidth(samples: int, alpha: float) -> float:
    """Two-sided distribution-free half-width sqrt(ln(2/alpha) / (2m))."""
    return math.sqrt(math.log(2.0 / alpha) / (2.0 * samples))


def wilson_interval(successes: int, samples: int, alpha: float) -> tuple[float, float]:
    z = NormalDist().inv_cdf(1.0 - alpha / 2.0)
    phat = successes / samples
    denom = 1.0 + z * z / samples
    center = (phat + z * z / (2 * samples)) / denom
    half = z * math.sqrt(phat * (1 - phat) / samples + z * z / (4 * samples * samples)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def _success_count(g: Graph, p: float, source: UniformSource,
                   lo: int, hi: int, batch: int = 8192) -> int:
    total = 0
    words = g.words
    for start in range(lo, hi, batch):
        stop = min(hi, start + batch)
        u = source.uniforms(start, stop)
        masks = bools_to_words(u < p)
        total += int(kernels.is_zfs_batch(words, masks).sum())
    return total


def mc_prob(g: Graph, cfg: SampleConfig, wilson: bool = False,
            batch: int = 8192) -> McEstimate:
    """Monte Carlo estimate of the probability that a Bernoulli(p) set is
    zero forcing, with a two-sided confidence interval. Reproducible for a
    fixed seed regardless of batch size."""
    source = UniformSource(g.n, cfg.seed, cfg.stream)
    succ = _success_count(g, cfg.p, source, 0, cfg.samples, batch)
    phat = succ / cfg.samples
    if wilson:
        lo, hi = wilson_interval(succ, cfg.samples, cfg.alpha)
        method = "wilson"
    else:
        hw = hoeffding_halfwidth(cfg.samples, cfg.alpha)
        lo, hi = max(0.0, phat - hw), min(1.0, phat + hw)
        method = "hoeffding"
    return McEstimate(phat, lo, hi, succ, cfg.samples, cfg.seed, cfg.alpha, method)


# ---------------------------------------------------------------------------
# thresholds


@dataclass(frozen=True)
class ThresholdEstimate:
    """Estimated p with Pr[random set forces] = 1/2."""

    p_hat: float
    method: str  # "exact-bisection" or "monte-carlo"
    tolerance: float | None = None
    ci: tuple[float, float] | None = None
    seed: int | None = None
    evaluations: int = 0
    inconclusive: bool = False


def bisect_increasing(fn: Callable[[float], float], target: float = 0.5,
                      tol: float = 1e-9) -> tuple[float, float, int]:
    """Bisection for a continuous increasing fn on [0, 1]. Returns
    (root, achieved |fn - target|, evaluations)."""
    lo, hi = 0.0, 1.0
    evals = 0
    for _ in range(200):
        mid = (lo + hi) / 2.0
        if mid == lo or mid == hi:
            break
        val = fn(mid)
        evals += 1
        if val < target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-13:
            break
    root = (lo + hi) / 2.0
    return root, abs(fn(root) - target), evals + 1


def threshold_exact(poly: ZfPolynomial, tol: float = 1e-9) -> ThresholdEstimate:
    """Threshold probability from exact counts, by bisection."""
    root, err, evals = bisect_increasing(poly.prob, 0.5, tol)
    return ThresholdEstimate(root, "exact-bisection", tolerance=max(tol, err),
                             evaluations=evals)


def exact_probability_fn(g: Graph, max_n: int | None = None) -> Callable[[float], float]:
    """Exact forcing-probability evaluator for a graph. Uses closed forms
    for empty graphs, complete graphs, and paths (any size); every other
    graph goes through subset enumeration and is capped accordingly."""
    n = g.n
    if g.edge_count == 0:
        return lambda p: prob_empty_graph(n, p)
    if g.edge_count == n * (n - 1) // 2:
        return lambda p: prob_kn_closed_form(n, p)
    if _is_path(g):
        return lambda p: prob_path(n, p)
    poly = zf_polynomial_exact(g) if max_n is None else zf_polynomial_exact(g, max_n=max_n)
    return poly.prob


def _is_path(g: Graph) -> bool:
    # degree profile alone also matches a cycle plus a path, so check
    # connectivity too
    if g.edge_count != g.n - 1:
        return False
    degs = sorted(g.degrees)
    if g.n == 1:
        return True
    if degs[:2] != [1, 1] or degs[2:] != [2] * (g.n - 2):
        return False
    seen = 1
    stack = [0]
    while stack:
        v = stack.pop()
        fresh = g.rows[v] & ~seen
        seen |= fresh
        stack.extend(u for u in range(g.n) if fresh >> u & 1)
    return seen == g.full_mask


def threshold_exact_graph(g: Graph, tol: float = 1e-9,
                          max_n: int | None = None) -> ThresholdEstimate:
    fn = exact_probability_fn(g, max_n)
    root, err, evals = bisect_increasing(fn, 0.5, tol)
    return ThresholdEstimate(root, "exact-bisection", tolerance=max(tol, err),
                             evaluations=evals)


def threshold_bounds_kn(n: int) -> tuple[float, float]:
    """Interval guaranteed to contain the complete-graph threshold for
    n >= 5: (1 - 5/n, 1 - 1/(2n))."""
    if n < 5:
        raise ValueError("need n >= 5")
    return 1.0 - 5.0 / n, 1.0 - 1.0 / (2.0 * n)


def threshold_mc(g: Graph, budget: int, seed: int, tol: float = 0.01,
                 tol_rel: float = 0.0, alpha: float = 0.05,
                 min_probe: int = 256, max_probe: int | None = None,
                 batch: int = 4096) -> ThresholdEstimate:
    """Stochastic bisection for the threshold of large graphs.

    Each probe p samples until its confidence interval excludes 1/2 or its
    budget share runs out. Probes are the bracket midpoints, so work always
    concentrates nearest the current root estimate, and per-probe tallies
    are cached and extended if a probe is ever revisited. Deterministic for
    a fixed seed.
    """
    if budget < min_probe:
        raise ValueError("budget smaller than one probe")
    if tol <= 0.0 and tol_rel <= 0.0:
        raise ValueError("need a positive tol or tol_rel")
    if max_probe is None:
        max_probe = max(min_probe, budget // 4)
    lo, hi = 0.0, 1.0
    spent = 0
    tally: dict[float, tuple[int, int, int]] = {}  # p -> (successes, drawn, stream)
    next_stream = 0
    inconclusive = False
    while hi - lo > max(tol, tol_rel * (lo + hi) / 2.0):
        mid = (lo + hi) / 2.0
        if mid in tally:
            succ, drawn, stream = tally[mid]
        else:
            succ, drawn, stream = 0, 0, next_stream
            next_stream += 1
        source = UniformSource(g.n, seed, stream)
        verdict = 0
        while True:
            if drawn >= min_probe:
                hw = hoeffding_halfwidth(drawn, alpha)
                phat = succ / drawn
                if phat - hw > 0.5:
                    verdict = 1
                    break
                if phat + hw < 0.5:
                    verdict = -1
                    break
            if drawn >= max_probe or spent >= budget:
                break
            step = min(batch, max_probe - drawn, budget - spent)
            succ += _success_count(g, mid, source, drawn, drawn + step, batch)
            drawn += step
            spent += step
        tally[mid] = (succ, drawn, stream)
        if verdict > 0:
            hi = mid
        elif verdict < 0:
            lo = mid
        else:
            inconclusive = True
            break
    return ThresholdEstimate(
        p_hat=(lo + hi) / 2.0,
        method="monte-carlo",
        tolerance=None,
        ci=(lo, hi),
        seed=seed,
        evaluations=spent,
        inconclusive=inconclusive,
    )
