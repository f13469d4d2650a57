"""Command line entry point. Exit codes: 0 success, 2 bad usage or a
violated precondition, 3 a verification counterexample was found."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__, corpus, experiments, graphs, structure
from .bitset import bit_list, to_mask
from .forcing import closure, is_zfs, zero_forcing_number
from .graphs import Graph, GraphError
from .polynomial import (
    EnumerationCapError,
    prob_zfs_exact,
    zf_polynomial_exact,
)
from .sampling import (
    SampleConfig,
    exact_probability_fn,
    mc_prob,
    threshold_exact_graph,
    threshold_mc,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_COUNTEREXAMPLE = 3


class CliError(Exception):
    pass


def _read_graph(tokens: list[str], max_one: bool = True) -> Graph:
    """Resolve the input tokens to one graph. Accepts a family descriptor
    (optionally preceded by the word 'family'), a graph6 file path, '-'
    for graph6 on stdin, an inline edge list 'edges:N:u-v,u-v', or a raw
    graph6 line."""
    if not tokens:
        raise CliError("missing graph input")
    if tokens[0] == "family":
        tokens = tokens[1:]
        if not tokens:
            raise CliError("'family' needs a descriptor such as path:16")
        return graphs.family(tokens[0])
    spec = tokens[0]
    if graphs.is_family_descriptor(spec):
        return graphs.family(spec)
    if spec == "-":
        decoded = list(graphs.iter_graph6_lines(sys.stdin))
        if not decoded:
            raise CliError("no graph6 lines on stdin")
        return decoded[0]
    if spec.startswith("edges:"):
        parts = spec.split(":", 2)
        if len(parts) != 3:
            raise CliError("inline edges need the form edges:N:u-v,u-v")
        n = int(parts[1])
        edges = []
        if parts[2]:
            for item in parts[2].split(","):
                u, _, v = item.partition("-")
                edges.append((int(u), int(v)))
        return graphs.make_graph(n, edges, spec)
    if os.path.exists(spec):
        decoded = graphs.read_graph6_file(spec)
        if not decoded:
            raise CliError(f"no graphs in {spec}")
        return decoded[0]
    try:
        return graphs.graph6_decode(spec)
    except GraphError as exc:
        raise CliError(
            f"could not interpret {spec!r} as a family, file, or graph6 line: {exc}"
        ) from exc


def _parse_grid(text: str) -> list[str]:
    """Grid spec: comma list '0.1,0.2' or 'start:stop:count'."""
    if ":" in text:
        start_s, stop_s, count_s = text.split(":")
        start, stop, count = Fraction(start_s), Fraction(stop_s), int(count_s)
        if count < 2:
            raise CliError("grid needs at least two points")
        step = (stop - start) / (count - 1)
        return [str(start + i * step) for i in range(count)]
    return [item.strip() for item in text.split(",") if item.strip()]


def _out_stream(args):
    if getattr(args, "out", None) and args.out != "-":
        return open(args.out, "w", encoding="utf-8")
    return sys.stdout


def _require_seed(args) -> int:
    if args.seed is None:
        raise CliError("--seed is required for sampled subcommands")
    return args.seed


# ---------------------------------------------------------------------------
# subcommand bodies


def cmd_gen(args) -> int:
    g = _read_graph(args.input)
    print(graphs.graph6_encode(g), file=_out_stream(args))
    return EXIT_OK


def cmd_zfs(args) -> int:
    g = _read_graph(args.input)
    blue = to_mask([int(s) for s in args.set.split(",") if s.strip() != ""], g.n)
    rec = closure(g, blue)
    verdict = rec.final_blue == g.full_mask
    payload = json.loads(rec.to_json())
    payload["is_zfs"] = verdict
    payload["set"] = bit_list(blue)
    print(json.dumps(payload, sort_keys=True), file=_out_stream(args))
    return EXIT_OK


def cmd_zfnum(args) -> int:
    g = _read_graph(args.input)
    print(zero_forcing_number(g), file=_out_stream(args))
    return EXIT_OK


def cmd_poly(args) -> int:
    g = _read_graph(args.input)
    poly = zf_polynomial_exact(g, max_n=args.max_n, threads=args.threads)
    out = _out_stream(args)
    if args.format == "json":
        print(poly.to_json(), file=out)
    else:
        print("k,z", file=out)
        for k, c in poly.csv_rows():
            print(f"{k},{c}", file=out)
    return EXIT_OK


def cmd_prob(args) -> int:
    g = _read_graph(args.input)
    if args.rational:
        poly = zf_polynomial_exact(g, max_n=args.max_n, threads=args.threads)
        val = prob_zfs_exact(poly, Fraction(args.p), exact=True)
        print(f"{val} = {float(val):.12g}", file=_out_stream(args))
    else:
        fn = exact_probability_fn(g, max_n=args.max_n)
        print(f"{fn(float(args.p)):.12g}", file=_out_stream(args))
    return EXIT_OK


def cmd_mc(args) -> int:
    g = _read_graph(args.input)
    seed = _require_seed(args)
    cfg = SampleConfig(p=args.p, samples=args.samples, seed=seed, alpha=args.alpha)
    est = mc_prob(g, cfg, wilson=args.wilson)
    out = _out_stream(args)
    print("p,estimate,ci_lo,ci_hi,samples,seed,alpha,method", file=out)
    print(f"{args.p:.10g},{est.estimate:.10g},{est.ci_lo:.10g},{est.ci_hi:.10g},"
          f"{est.samples},{est.seed},{est.alpha:.10g},{est.method}", file=out)
    return EXIT_OK


def cmd_threshold(args) -> int:
    g = _read_graph(args.input)
    out = _out_stream(args)
    if args.method == "exact":
        est = threshold_exact_graph(g, tol=args.tol, max_n=args.max_n)
        print("p_hat,method,tolerance,evaluations", file=out)
        print(f"{est.p_hat:.12g},{est.method},{est.tolerance:.3g},{est.evaluations}",
              file=out)
    else:
        seed = _require_seed(args)
        est = threshold_mc(g, budget=args.budget, seed=seed, tol=args.tol,
                           tol_rel=args.tol_rel, alpha=args.alpha)
        print("p_hat,method,ci_lo,ci_hi,samples,seed,inconclusive", file=out)
        print(f"{est.p_hat:.10g},{est.method},{est.ci[0]:.10g},{est.ci[1]:.10g},"
              f"{est.evaluations},{est.seed},{int(est.inconclusive)}", file=out)
    return EXIT_OK


def cmd_core2(args) -> int:
    g = _read_graph(args.input)
    proj = structure.two_core(g)
    out = _out_stream(args)
    if proj.core is None:
        print(json.dumps({"core": None, "vertices": []}), file=out)
    else:
        print(json.dumps({
            "core": graphs.graph6_encode(proj.core),
            "vertices": list(proj.core_vertices),
        }, sort_keys=True), file=out)
    return EXIT_OK


def cmd_pendants(args) -> int:
    g = _read_graph(args.input)
    paths = structure.pendant_paths(g)
    trees = structure.pendant_trees(g)
    print(json.dumps({
        "pendant_paths": [list(p.vertices) for p in paths],
        "pendant_trees": [
            {"vertices": bit_list(t.vertices), "anchor": t.anchor} for t in trees
        ],
    }, sort_keys=True), file=_out_stream(args))
    return EXIT_OK


def cmd_verify(args) -> int:
    grid = _parse_grid(args.grid) if args.grid else None
    claim = args.claim
    if claim == "path-count":
        items, desc, digest = corpus.load_corpus(args.corpus)
        report = corpus.verify_path_count(items, desc, digest,
                                          max_n=args.max_n, threads=args.threads)
    elif claim == "tree-vs-path":
        if not args.corpus.startswith("trees:"):
            raise CliError("tree-vs-path needs --corpus trees:N")
        n = int(args.corpus.split(":")[1].split("-")[-1])
        report = corpus.verify_tree_vs_path(
            n, grid or [str(Fraction(k, 20)) for k in range(1, 20)],
            max_n=args.max_n, threads=args.threads)
    elif claim == "degree-bounds":
        items, desc, digest = corpus.load_corpus(args.corpus)
        report = corpus.verify_degree_bounds(
            items, grid or [str(Fraction(k, 20)) for k in range(1, 20)],
            desc, digest, max_n=args.max_n, threads=args.threads)
    elif claim == "core-projection":
        seed = _require_seed(args)
        report = corpus.verify_core_projection(args.pairs, seed, n_max=args.pair_max_n)
    elif claim == "threshold-min-path":
        items, desc, digest = corpus.load_corpus(args.corpus)
        report = corpus.verify_threshold_min_path(items, desc, digest, max_n=args.max_n)
    else:
        raise CliError(f"unknown claim {claim!r}; choose from {sorted(corpus.CLAIMS)}")
    # stdout stays byte-identical across runs; the wall time goes to the
    # report file only
    print(report.to_json(include_runtime=False), file=_out_stream(args))
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report.to_json(include_runtime=True) + "\n")
    return EXIT_OK if report.passed else EXIT_COUNTEREXAMPLE


def cmd_experiment(args) -> int:
    out = _out_stream(args)
    if args.which == "figure2":
        seed = _require_seed(args)
        sizes = tuple(int(s) for s in args.sizes.split(","))
        grid = [float(Fraction(s)) for s in _parse_grid(args.grid)] if args.grid else None
        rows = experiments.figure_curves(sizes, grid, seed=seed,
                                         samples=args.samples, threads=args.threads)
        out.write(experiments.rows_to_csv(rows, experiments.CURVE_HEADER))
    else:
        seed = _require_seed(args)
        sizes = [int(s) for s in args.sizes.split(",")]
        rows = experiments.threshold_orders(args.family, sizes,
                                            budget=args.budget, seed=seed)
        out.write(experiments.rows_to_csv(rows, experiments.ORDERS_HEADER))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="zfl",
        description="Zero forcing toolkit: exact set counting, random-set "
                    "probabilities, thresholds, structure, verification.",
    )
    ap.add_argument("--version", action="version", version=f"zfl {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p, seeded=False, out=True):
        p.add_argument("--threads", type=int,
                       default=None, help="worker threads (default: ZFL_THREADS or all cores)")
        p.add_argument("--max-n", type=int, default=24,
                       help="exact enumeration cap (hard limit 30)")
        if seeded:
            p.add_argument("--seed", type=int, default=None, help="RNG seed (required)")
        if out:
            p.add_argument("--out", default="-", help="output file (default stdout)")

    p = sub.add_parser("gen", help="emit a graph as graph6")
    p.add_argument("input", nargs="+")
    add_common(p)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("zfs", help="closure record and zero-forcing verdict for a set")
    p.add_argument("action", choices=["check"])
    p.add_argument("--set", required=True, help="comma list of vertices, e.g. 1,2")
    p.add_argument("input", nargs="+")
    add_common(p)
    p.set_defaults(fn=cmd_zfs)

    p = sub.add_parser("zfnum", help="zero forcing number (exhaustive, n <= 32)")
    p.add_argument("input", nargs="+")
    add_common(p)
    p.set_defaults(fn=cmd_zfnum)

    p = sub.add_parser("poly", help="exact count of zero forcing sets by size")
    p.add_argument("input", nargs="+")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--rational", action="store_true",
                   help="accepted for symmetry; counts are always exact integers")
    add_common(p)
    p.set_defaults(fn=cmd_poly)

    p = sub.add_parser("prob", help="exact probability that a Bernoulli(p) set forces")
    p.add_argument("input", nargs="+")
    p.add_argument("--p", required=True, help="inclusion probability")
    p.add_argument("--rational", action="store_true", help="exact rational output")
    add_common(p)
    p.set_defaults(fn=cmd_prob)

    p = sub.add_parser("mc", help="Monte Carlo probability estimate with CI")
    p.add_argument("input", nargs="+")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--wilson", action="store_true", help="Wilson CI instead of Hoeffding")
    add_common(p, seeded=True)
    p.set_defaults(fn=cmd_mc)

    p = sub.add_parser("threshold", help="solve for p with forcing probability 1/2")
    p.add_argument("input", nargs="+")
    p.add_argument("--method", choices=["exact", "mc"], default="exact")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--tol-rel", type=float, default=0.0)
    p.add_argument("--budget", type=int, default=200_000)
    p.add_argument("--alpha", type=float, default=0.05)
    add_common(p, seeded=True)
    p.set_defaults(fn=cmd_threshold)

    p = sub.add_parser("core2", help="2-core as graph6 plus the vertex map")
    p.add_argument("input", nargs="+")
    add_common(p)
    p.set_defaults(fn=cmd_core2)

    p = sub.add_parser("pendants", help="pendant paths and pendant trees")
    p.add_argument("input", nargs="+")
    add_common(p)
    p.set_defaults(fn=cmd_pendants)

    p = sub.add_parser("verify", help="run a verification claim over a corpus")
    p.add_argument("claim", choices=sorted(corpus.CLAIMS))
    p.add_argument("--corpus", default="", help="graph6 file or trees:N / trees:A-B")
    p.add_argument("--grid", default="", help="p grid: comma list or start:stop:count")
    p.add_argument("--pairs", type=int, default=100_000,
                   help="random pairs for core-projection")
    p.add_argument("--pair-max-n", type=int, default=12)
    p.add_argument("--report", default="", help="write the full report (with runtime) here")
    add_common(p, seeded=True)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("experiment", help="CSV experiment runs")
    p.add_argument("which", choices=["figure2", "orders"])
    p.add_argument("--sizes", default="16,256")
    p.add_argument("--grid", default="", help="p grid for figure2")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--family", default="cycle",
                   choices=sorted(experiments.FAMILY_EXPONENTS))
    p.add_argument("--budget", type=int, default=200_000)
    add_common(p, seeded=True)
    p.set_defaults(fn=cmd_experiment)

    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads is not None:
        os.environ["ZFL_THREADS"] = str(args.threads)
    try:
        return args.fn(args)
    except (CliError, GraphError, EnumerationCapError, ValueError) as exc:
        print(f"zfl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
