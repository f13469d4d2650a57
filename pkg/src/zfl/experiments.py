"""Reproducible experiment runs emitting CSV: forcing-probability curves
at two scales (exact at 16 vertices, Monte Carlo at 256) and threshold
scaling studies across graph families."""

from __future__ import annotations

import csv
import io
from typing import Sequence

from .graphs import Graph, family
from .polynomial import zf_polynomial_exact
from .sampling import (
    SampleConfig,
    derive_seed,
    mc_prob,
    threshold_exact_graph,
    threshold_mc,
)

FIGURE_GRAPHS = {
    16: ("path:16", "grid:4x4", "hypercube:4", "bintree:16"),
    256: ("path:256", "grid:16x16", "hypercube:8", "bintree:256"),
}

CURVE_HEADER = ("graph", "n", "p", "estimate", "ci_lo", "ci_hi",
                "method", "samples", "seed")

ORDERS_HEADER = ("family", "n", "p_hat", "ci_lo", "ci_hi", "gamma",
                 "normalized", "samples", "inconclusive", "seed")

FAMILY_EXPONENTS = {
    "path": 0.5,
    "cycle": 0.5,
    "wheel": 1.0 / 3.0,
    "grid2": 0.25,
}


def default_grid(step: float = 0.025) -> list[float]:
    count = round(1.0 / step)
    return [k * step for k in range(count + 1)]


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def figure_curves(sizes: Sequence[int] = (16, 256), p_grid: Sequence[float] | None = None,
                  seed: int = 0, samples: int = 10_000, alpha: float = 0.01,
                  threads: int | None = None) -> list[dict]:
    """Probability-of-forcing curves for the path, square grid, hypercube,
    and left-complete binary tree at each size. Sizes with at most 24
    vertices get exact curves from the counts; larger sizes get seeded
    Monte Carlo estimates with Hoeffding intervals."""
    grid_points = list(p_grid) if p_grid is not None else default_grid()
    rows = []
    for size in sizes:
        if size not in FIGURE_GRAPHS:
            raise ValueError(f"no figure graphs registered for size {size}")
        for desc in FIGURE_GRAPHS[size]:
            g = family(desc)
            if g.n <= 24:
                poly = zf_polynomial_exact(g, threads=threads)
                for p in grid_points:
                    val = poly.prob(p)
                    rows.append({
                        "graph": desc, "n": g.n, "p": _fmt(p),
                        "estimate": _fmt(val), "ci_lo": _fmt(val), "ci_hi": _fmt(val),
                        "method": "exact", "samples": 0, "seed": "",
                    })
            else:
                for i, p in enumerate(grid_points):
                    sub = derive_seed(seed, "figure", desc, i)
                    est = mc_prob(g, SampleConfig(p=p, samples=samples,
                                                  seed=sub, alpha=alpha))
                    rows.append({
                        "graph": desc, "n": g.n, "p": _fmt(p),
                        "estimate": _fmt(est.estimate), "ci_lo": _fmt(est.ci_lo),
                        "ci_hi": _fmt(est.ci_hi), "method": "mc",
                        "samples": samples, "seed": sub,
                    })
    return rows


def curve_crossing(rows: list[dict], graph: str) -> float | None:
    """Linear-interpolation estimate of where a curve crosses 1/2."""
    pts = [(float(r["p"]), float(r["estimate"])) for r in rows if r["graph"] == graph]
    pts.sort()
    for (p0, v0), (p1, v1) in zip(pts, pts[1:]):
        if v0 < 0.5 <= v1:
            if v1 == v0:
                return p0
            return p0 + (0.5 - v0) * (p1 - p0) / (v1 - v0)
    return None


def exact_crossing(desc: str) -> float:
    return threshold_exact_graph(family(desc)).p_hat


def _orders_graph(family_name: str, n: int) -> Graph:
    if family_name == "grid2":
        return family(f"grid:2x{n // 2}")
    return family(f"{family_name}:{n}")


def threshold_orders(family_name: str, sizes: Sequence[int], budget: int,
                     seed: int, tol_rel: float = 0.05,
                     alpha: float = 0.05) -> list[dict]:
    """Monte Carlo threshold estimates across sizes plus the normalized
    statistic p_hat * n^gamma for the family's expected decay exponent."""
    if family_name not in FAMILY_EXPONENTS:
        raise ValueError(f"unknown family {family_name!r}; "
                         f"choose from {sorted(FAMILY_EXPONENTS)}")
    gamma = FAMILY_EXPONENTS[family_name]
    rows = []
    for n in sizes:
        g = _orders_graph(family_name, n)
        sub = derive_seed(seed, "orders", family_name, n)
        est = threshold_mc(g, budget=budget, seed=sub, tol=1e-4,
                           tol_rel=tol_rel, alpha=alpha)
        rows.append({
            "family": family_name, "n": g.n,
            "p_hat": _fmt(est.p_hat),
            "ci_lo": _fmt(est.ci[0]), "ci_hi": _fmt(est.ci[1]),
            "gamma": _fmt(gamma),
            "normalized": _fmt(est.p_hat * g.n ** gamma),
            "samples": est.evaluations,
            "inconclusive": int(est.inconclusive),
            "seed": sub,
        })
    return rows


def rows_to_csv(rows: list[dict], header: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(header), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()
