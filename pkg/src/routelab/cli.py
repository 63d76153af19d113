"""Experiment runner: generate or ingest graphs, build schemes, evaluate.

Subcommands:
  gen    write a generated topology as an edge-list file
  eval   build schemes on one graph and emit summary + distribution CSVs
  sweep  build one scheme across sizes/seeds and emit a scaling CSV

All outputs are UTF-8 CSV with '#'-prefixed metadata lines.  With
--timing-mode=zero the timing columns are written as zeros so repeated
runs with identical seeds are byte-identical.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .baselines import GridConfig, HierConfig, TreeConfig, TrivialConfig
from .dictrouting import NIConfig
from .evaluation import PairSampler, evaluate, scaling_sweep
from .generators import (GENERATORS, gen_er, gen_grid, gen_power_law, gen_star,
                         gen_tree, gen_full_mesh)
from .graphs import Graph, connected, largest_connected_component, parse_edge_list
from .landmarks import LandmarkConfig
from .routing import BuildError, build
from .treecover import HybridConfig, TreeCoverConfig

SUMMARY_COLUMNS = ("scheme,n,edges,pairs,delivery,avg_stretch,max_stretch,"
                   "mean_entries,max_entries,mean_bits,max_bits,"
                   "neighbor_direct,build_s,eval_s")


def _f(x: float) -> str:
    return f"{x:.6f}"


def _parse_dims(text: str) -> tuple:
    return tuple(int(d) for d in text.split(",") if d)


def _generate_from_args(args) -> Graph:
    kind = args.kind
    if kind not in GENERATORS:
        raise SystemExit(f"unknown generator kind {kind!r}; "
                         f"known: {sorted(GENERATORS)}")
    if kind == "grid":
        if not args.dims:
            raise SystemExit("grid generation needs --dims")
        return gen_grid(_parse_dims(args.dims))
    if kind == "power-law":
        return gen_power_law(args.n, args.m, args.seed, p_tri=args.p_tri)
    if kind == "tree":
        return gen_tree(args.n, args.max_arity, args.seed)
    if kind == "star":
        return gen_star(args.n)
    if kind == "full-mesh":
        return gen_full_mesh(args.n)
    if kind == "er":
        return gen_er(args.n, args.p, args.seed)
    raise SystemExit(f"unhandled generator kind {kind!r}")


def _add_generator_flags(p: argparse.ArgumentParser):
    p.add_argument("--kind", help="generator: " + ", ".join(sorted(GENERATORS)))
    p.add_argument("--n", type=int, default=100, help="node count")
    p.add_argument("--m", type=int, default=2,
                   help="power-law: edges per new node")
    p.add_argument("--p-tri", type=float, default=0.5,
                   help="power-law: triangle closure probability")
    p.add_argument("--p", type=float, default=0.1, help="er: edge probability")
    p.add_argument("--max-arity", type=int, default=4,
                   help="tree: maximum children per node")
    p.add_argument("--dims", help="grid: comma-separated dimension sizes")
    p.add_argument("--seed", type=int, default=0, help="generator seed")


def _scheme_config(name: str, args, dims):
    if name == "trivial":
        return TrivialConfig()
    if name == "tree":
        return TreeConfig(root=args.tree_root)
    if name == "grid":
        if not dims:
            raise SystemExit("grid scheme needs --dims (or a generated grid)")
        return GridConfig(dims=tuple(dims))
    if name == "hier":
        return HierConfig(cluster_target=args.cluster_target)
    if name in ("tz", "cowen"):
        mode = {"random": "tz_random", "dominating": "cowen_dominating",
                "explicit": "explicit"}[args.tz_mode]
        if name == "cowen" and args.tz_mode == "random":
            mode = "cowen_dominating"
        landmarks = ()
        if mode == "explicit":
            if not args.landmark_file:
                raise SystemExit("explicit landmarks need --landmark-file")
            landmarks = tuple(_read_landmarks(args.landmark_file))
        return LandmarkConfig(scheme=name, mode=mode, landmarks=landmarks)
    if name == "bc":
        return TreeCoverConfig(trees=args.bc_trees)
    if name == "hybrid":
        return HybridConfig(tz=LandmarkConfig(),
                            bc=TreeCoverConfig(trees=args.bc_trees))
    if name == "ni":
        return NIConfig(underlay=args.ni_underlay, ball_factor=args.ni_c)
    raise SystemExit(f"unknown scheme {name!r}")


def _read_landmarks(path: str) -> list[int]:
    tokens = []
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line and not line.startswith("#"):
                tokens.append(line)
    return [int(t) for t in tokens]


def _load_graph(args) -> tuple[Graph, list[str]]:
    notes = []
    if args.graph:
        try:
            with open(args.graph, "rb") as f:
                graph = parse_edge_list(f)
        except OSError as exc:
            raise SystemExit(f"cannot read graph file {args.graph}: {exc}")
        notes.append(f"graph_file={args.graph}")
    elif args.kind:
        graph = _generate_from_args(args)
        notes.append(f"generated kind={args.kind} n={graph.n} seed={args.seed}")
    else:
        raise SystemExit("eval needs either --graph or --kind")
    if not connected(graph):
        graph, orig = largest_connected_component(graph)
        notes.append(f"reduced to largest connected component: n={graph.n}")
    return graph, notes


# -- gen ----------------------------------------------------------------------


def cmd_gen(args) -> int:
    graph = _generate_from_args(args)
    out = Path(args.out)
    params = [f"kind={args.kind}", f"n={graph.n}", f"edges={graph.edge_count}",
              f"seed={args.seed}"]
    if args.kind == "grid":
        params.append(f"dims={args.dims}")
    if args.kind == "power-law":
        params.extend([f"m={args.m}", f"p_tri={args.p_tri}"])
    if args.kind == "er":
        params.append(f"p={args.p}")
    if args.kind == "tree":
        params.append(f"max_arity={args.max_arity}")
    try:
        with open(out, "w", encoding="utf-8") as f:
            f.write(f"# routelab gen {' '.join(params)}\n")
            names = graph.names or [str(i) for i in range(graph.n)]
            for u, v in graph.iter_edges():
                f.write(f"{names[u]} {names[v]}\n")
    except OSError as exc:
        raise SystemExit(f"cannot write {out}: {exc}")
    print(f"wrote {graph.n} nodes / {graph.edge_count} edges to {out}")
    return 0


# -- eval ---------------------------------------------------------------------


def _summary_row(scheme: str, graph: Graph, report, timing_mode: str) -> str:
    build_s = report.build_seconds if timing_mode == "wall" else 0.0
    eval_s = report.eval_seconds if timing_mode == "wall" else 0.0
    return ",".join([
        scheme, str(graph.n), str(graph.edge_count), str(report.pair_count),
        _f(report.delivery_rate), _f(report.avg_stretch), _f(report.max_stretch),
        _f(report.entries_mean), str(report.entries_max),
        _f(report.bits_mean), str(report.bits_max),
        _f(report.neighbor_direct), f"{build_s:.3f}", f"{eval_s:.3f}",
    ])


def _write_hist(path: Path, header: str, rows: list[str], meta: list[str]):
    with open(path, "w", encoding="utf-8") as f:
        for line in meta:
            f.write(f"# {line}\n")
        f.write(header + "\n")
        for row in rows:
            f.write(row + "\n")


def _stretch_hist_rows(report) -> list[str]:
    rows = []
    for b in sorted(report.stretch_hist):
        lo = 1.0 + 0.05 * b
        rows.append(f"{lo:.2f},{lo + 0.05:.2f},{report.stretch_hist[b]}")
    return rows


def _rt_hist_rows(report) -> list[str]:
    rows = []
    for b in sorted(report.entries_hist):
        lo = 0 if b == 0 else 2 ** (b - 1)
        hi = 0 if b == 0 else 2 ** b - 1
        rows.append(f"{lo},{hi},{report.entries_hist[b]}")
    return rows


def cmd_eval(args) -> int:
    graph, notes = _load_graph(args)
    schemes = [s.strip() for s in args.schemes.split(",") if s.strip()]
    if not schemes:
        raise SystemExit("eval needs --schemes")
    dims = _parse_dims(args.dims) if args.dims else ()
    if args.pairs == "all":
        sampler = PairSampler("all_pairs")
    else:
        sampler = PairSampler("uniform_random", count=int(args.pairs),
                              seed=args.pair_seed)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)

    meta = [
        f"routelab {__version__} eval",
        f"graph n={graph.n} edges={graph.edge_count} hash={graph.hash_hex()}",
        f"schemes={','.join(schemes)}",
        f"sampler mode={sampler.mode} count={sampler.count} seed={sampler.seed}",
        f"build_seed={args.seed} timing_mode={args.timing_mode}",
    ] + notes

    configs = {name: _scheme_config(name, args, dims) for name in schemes}
    meta.extend(f"config {configs[name]!r}" for name in schemes)

    rows = []
    failures = []
    fault_total = 0
    for name in schemes:
        config = configs[name]
        try:
            artifacts = build(config, graph, args.seed)
        except BuildError as exc:
            failures.append(f"error: scheme={name}: {exc}")
            rows.append(",".join([name, str(graph.n), str(graph.edge_count)]
                                 + ["0"] * 11))
            continue
        report = evaluate(artifacts, graph, sampler, threads=args.threads)
        fault_total += report.loop_faults + report.routing_faults
        rows.append(_summary_row(name, graph, report, args.timing_mode))
        _write_hist(outdir / f"{name}_stretch_hist.csv", "bin_lo,bin_hi,count",
                    _stretch_hist_rows(report), meta + [f"scheme={name}"])
        _write_hist(outdir / f"{name}_rt_hist.csv", "entries_lo,entries_hi,count",
                    _rt_hist_rows(report), meta + [f"scheme={name}"])
        print(f"{name}: delivery={report.delivery_rate:.4f} "
              f"avg_stretch={report.avg_stretch:.4f} "
              f"mean_entries={report.entries_mean:.1f}")

    summary = outdir / "summary.csv"
    with open(summary, "w", encoding="utf-8") as f:
        for line in meta:
            f.write(f"# {line}\n")
        for line in failures:
            f.write(f"# {line}\n")
        f.write(SUMMARY_COLUMNS + "\n")
        for row in rows:
            f.write(row + "\n")
    print(f"wrote {summary}")
    if failures:
        return 2
    return 0 if fault_total == 0 else 1


# -- sweep --------------------------------------------------------------------


def cmd_sweep(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    if sorted(sizes) != sizes:
        raise SystemExit("--sizes must be ascending")
    dims = _parse_dims(args.dims) if args.dims else ()
    config = _scheme_config(args.scheme, args, dims)

    kind = args.kind or "power-law"

    def generator(n, seed):
        if kind == "power-law":
            return gen_power_law(n, args.m, seed, p_tri=args.p_tri)
        if kind == "er":
            g = gen_er(n, args.p, seed)
            return largest_connected_component(g)[0]
        if kind == "tree":
            return gen_tree(n, args.max_arity, seed)
        if kind == "star":
            return gen_star(n)
        if kind == "full-mesh":
            return gen_full_mesh(n)
        raise SystemExit(f"sweep does not support kind {kind!r}")

    rows = scaling_sweep(config, generator, sizes, args.seeds,
                         pairs=args.pairs_per_point, build_seed=args.seed)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    cols = ["scheme", "n", "seed", "edges", "pairs", "delivery", "avg_stretch",
            "mean_entries", "max_entries", "mean_bits", "max_bits",
            "entries_over_sqrt_nlogn", "bits_over_log2sq", "build_s", "eval_s"]
    with open(out, "w", encoding="utf-8") as f:
        f.write(f"# routelab {__version__} sweep scheme={args.scheme} "
                f"kind={kind} sizes={args.sizes} seeds={args.seeds}\n")
        f.write(",".join(cols) + "\n")
        for row in rows:
            vals = []
            for c in cols:
                v = row[c]
                if c in ("build_s", "eval_s"):
                    vals.append(f"{v:.3f}" if args.timing_mode == "wall"
                                else "0.000")
                elif isinstance(v, float):
                    vals.append(_f(v))
                else:
                    vals.append(str(v))
            f.write(",".join(vals) + "\n")
    print(f"wrote {out} ({len(rows)} rows)")
    return 0


# -- entry point ---------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="routelab",
        description="Compact-routing laboratory: build schemes on static "
                    "graphs and measure stretch and routing-table sizes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a topology edge-list file")
    _add_generator_flags(p_gen)
    p_gen.add_argument("--out", required=True, help="output edge-list path")
    p_gen.set_defaults(func=cmd_gen)

    p_eval = sub.add_parser("eval", help="evaluate schemes on one graph")
    p_eval.add_argument("--graph", help="edge-list file to ingest")
    _add_generator_flags(p_eval)
    p_eval.add_argument("--schemes", required=True,
                        help="comma-separated scheme names")
    p_eval.add_argument("--pairs", default="10000",
                        help="pair sample size, or 'all'")
    p_eval.add_argument("--pair-seed", type=int, default=0)
    p_eval.add_argument("--out", required=True, help="output directory")
    p_eval.add_argument("--threads", type=int, default=1)
    p_eval.add_argument("--timing-mode", choices=("wall", "zero"),
                        default="wall",
                        help="zero: write 0 timings for byte-identical reruns")
    _add_scheme_flags(p_eval)
    p_eval.set_defaults(func=cmd_eval)

    p_sweep = sub.add_parser("sweep", help="scaling sweep for one scheme")
    _add_generator_flags(p_sweep)
    p_sweep.add_argument("--scheme", required=True)
    p_sweep.add_argument("--sizes", required=True,
                         help="comma-separated ascending graph sizes")
    p_sweep.add_argument("--seeds", type=int, default=5,
                         help="generator seeds per size (0..seeds-1)")
    p_sweep.add_argument("--pairs-per-point", type=int, default=2000)
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.add_argument("--timing-mode", choices=("wall", "zero"),
                         default="wall")
    _add_scheme_flags(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)
    return parser


def _add_scheme_flags(p: argparse.ArgumentParser):
    p.add_argument("--bc-trees", type=int, default=5,
                   help="extra trees in the tree cover")
    p.add_argument("--ni-underlay", choices=("tz", "bc", "hybrid"),
                   default="hybrid")
    p.add_argument("--ni-c", type=float, default=1.0,
                   help="vicinity ball size factor")
    p.add_argument("--cluster-target", type=int, default=4,
                   help="hierarchical cluster size target")
    p.add_argument("--tz-mode", choices=("random", "dominating", "explicit"),
                   default="random")
    p.add_argument("--landmark-file",
                   help="explicit landmarks, one node token per line")
    p.add_argument("--tree-root", type=int, default=0)


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
