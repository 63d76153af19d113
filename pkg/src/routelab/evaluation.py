"""Measurement harness: stretch, table sizes, delivery, neighbor directness.

Routes a sampled (or exhaustive) pair set, scores every delivered route
against a per-source BFS oracle, and aggregates distributions the way the
summary CSV expects them: stretch in 0.05-wide bins, table entries in
power-of-two bins.  Faults never crash an evaluation; they show up as a
delivery-rate deficit with per-kind counts.
"""

from __future__ import annotations

import math
import random
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .graphs import Graph, bfs_distances
from .routing import (RouteResult, RoutingFault, SchemeArtifacts, forward,
                      make_header, route, table_size)

STRETCH_BIN = 0.05


@dataclass(frozen=True)
class PairSampler:
    """Ordered source-destination pairs, excluding src == dst.

    mode "all_pairs" enumerates everything; "uniform_random" draws
    ``count`` pairs uniformly without replacement (or exhausts the space).
    """

    mode: str = "uniform_random"
    count: int = 10000
    seed: int = 0

    def pairs(self, n: int) -> list[tuple[int, int]]:
        total = n * (n - 1)
        if self.mode == "all_pairs":
            return [(s, t) for s in range(n) for t in range(n) if s != t]
        if self.mode != "uniform_random":
            raise ValueError(f"unknown sampler mode {self.mode!r}")
        k = min(self.count, total)
        rng = random.Random(self.seed)
        picks = rng.sample(range(total), k) if total > 0 else []
        out = []
        for idx in picks:
            s, r = divmod(idx, n - 1)
            t = r + 1 if r >= s else r
            out.append((s, t))
        return out


@dataclass
class EvalReport:
    scheme: str
    graph_desc: dict
    pair_count: int
    delivered: int
    loop_faults: int
    routing_faults: int
    avg_stretch: float
    max_stretch: float
    stretch_hist: dict          # bin index -> count; bin b is [1+0.05b, 1+0.05(b+1))
    entries_mean: float
    entries_max: int
    bits_mean: float
    bits_max: int
    entries_hist: dict          # bucket k holds entry counts in [2^(k-1), 2^k)
    neighbor_direct: float
    neighbor_violations: int
    avg_distance: float
    build_seconds: float
    eval_seconds: float
    meta: dict = field(default_factory=dict)

    @property
    def delivery_rate(self) -> float:
        return self.delivered / self.pair_count if self.pair_count else 1.0


def stretch_bin(stretch: float) -> int:
    return int(math.floor((stretch - 1.0) / STRETCH_BIN + 1e-9))


def entries_bucket(entries: int) -> int:
    return int(entries).bit_length()  # 0->0, 1->1, [2,3]->2, [4,7]->3, ...


def _route_batch(artifacts, graph, src, dsts):
    dist = bfs_distances(graph, src)
    return [route(artifacts, graph, src, t, shortest=int(dist[t]))
            for t in dsts]


def evaluate(artifacts: SchemeArtifacts, graph: Graph, sampler: PairSampler,
             threads: int = 1, neighbor_sample: int = 20000) -> EvalReport:
    """Route every sampled pair and aggregate the report (deterministic)."""
    t0 = time.perf_counter()
    pairs = sampler.pairs(graph.n)
    groups: dict[int, list[int]] = {}
    for s, t in pairs:
        groups.setdefault(s, []).append(t)
    sources = sorted(groups)

    delivered = loops = faults = 0
    stretch_sum = 0.0
    stretch_pairs = 0
    stretch_max = 0.0
    hist: dict[int, int] = {}
    dist_sum = 0.0

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_route_batch, artifacts, graph, s, groups[s])
                       for s in sources]
            batches = [f.result() for f in futures]
    else:
        batches = [_route_batch(artifacts, graph, s, groups[s]) for s in sources]

    for batch in batches:
        for r in batch:
            dist_sum += r.shortest
            if not r.delivered:
                if r.fault == "loop":
                    loops += 1
                else:
                    faults += 1
                continue
            delivered += 1
            if r.stretch is not None:
                stretch_sum += r.stretch
                stretch_pairs += 1
                if r.stretch > stretch_max:
                    stretch_max = r.stretch
                b = stretch_bin(r.stretch)
                hist[b] = hist.get(b, 0) + 1

    entries = np.empty(graph.n, dtype=np.int64)
    bits = np.empty(graph.n, dtype=np.int64)
    for v in range(graph.n):
        entries[v], bits[v] = table_size(artifacts, v)
    e_hist: dict[int, int] = {}
    for e in entries.tolist():
        b = entries_bucket(e)
        e_hist[b] = e_hist.get(b, 0) + 1

    nd_fraction, nd_violations = neighbor_check(
        artifacts, graph, sample=neighbor_sample, seed=sampler.seed)

    return EvalReport(
        scheme=artifacts.scheme,
        graph_desc={"n": graph.n, "edges": graph.edge_count,
                    "hash": graph.hash_hex()},
        pair_count=len(pairs),
        delivered=delivered,
        loop_faults=loops,
        routing_faults=faults,
        avg_stretch=stretch_sum / stretch_pairs if stretch_pairs else 1.0,
        max_stretch=stretch_max if stretch_pairs else 1.0,
        stretch_hist=hist,
        entries_mean=float(entries.mean()) if graph.n else 0.0,
        entries_max=int(entries.max()) if graph.n else 0,
        bits_mean=float(bits.mean()) if graph.n else 0.0,
        bits_max=int(bits.max()) if graph.n else 0,
        entries_hist=e_hist,
        neighbor_direct=nd_fraction,
        neighbor_violations=nd_violations,
        avg_distance=dist_sum / len(pairs) if pairs else 0.0,
        build_seconds=float(artifacts.meta.get("build_seconds", 0.0)),
        eval_seconds=time.perf_counter() - t0,
    )


def neighbor_check(artifacts: SchemeArtifacts, graph: Graph,
                   sample: int = 20000, seed: int = 0) -> tuple[float, int]:
    """Fraction of ordered neighbor pairs routed in exactly one hop.

    A fraction below 1.0 reproduces the effect that forces operators to
    re-add direct-neighbor routes by hand.
    """
    edges = list(graph.iter_edges())
    ordered = [(u, v) for u, v in edges] + [(v, u) for u, v in edges]
    if len(ordered) > sample:
        rng = random.Random(seed)
        ordered = rng.sample(ordered, sample)
    if not ordered:
        return 1.0, 0
    direct = 0
    for s, t in ordered:
        r = route(artifacts, graph, s, t, shortest=1)
        if r.delivered and r.hops == 1:
            direct += 1
    return direct / len(ordered), len(ordered) - direct


def naive_route(artifacts: SchemeArtifacts, graph: Graph, src: int,
                dst: int) -> RouteResult:
    """Independent second route simulator used for oracle equivalence.

    Deliberately naive: deque BFS for the shortest distance, a plain
    forwarding walk, no caching.  Must reproduce route() hop for hop.
    """
    dist = {src: 0}
    q = deque([src])
    while q:
        u = q.popleft()
        for v in graph.neighbors(u):
            v = int(v)
            if v not in dist:
                dist[v] = dist[u] + 1
                q.append(v)
    shortest = dist.get(dst, -1)
    if src == dst:
        return RouteResult(True, (src,), 0, 0, None)
    header = make_header(artifacts, dst)
    cur = src
    path = [src]
    steps = 0
    while steps <= artifacts.hop_budget:
        try:
            decision = forward(artifacts, cur, header)
        except RoutingFault:
            return RouteResult(False, tuple(path), len(path) - 1, shortest,
                               None, fault="routing")
        if decision is None:
            hops = len(path) - 1
            ok = cur == dst
            return RouteResult(ok, tuple(path), hops, shortest,
                               hops / shortest if ok and shortest >= 1 else None,
                               fault=None if ok else "routing")
        header.budget -= 1
        cur = graph.neighbor_at(cur, decision)
        path.append(cur)
        steps += 1
    return RouteResult(False, tuple(path), len(path) - 1, shortest, None,
                       fault="loop")


def scaling_sweep(config, generator, sizes, seeds, pairs: int = 2000,
                  build_seed: int = 0) -> list[dict]:
    """Build and evaluate one scheme across graph sizes and seeds.

    ``generator`` is a callable (n, seed) -> Graph.  Emits one row per
    (n, seed) with entry/bit maxima and the two normalization ratios:
    max entries / sqrt(n ln n) and max bits / (log2 n)^2.
    """
    from .routing import build as build_scheme  # local to avoid cycle at import

    rows = []
    for n in sizes:
        for seed in range(seeds):
            graph = generator(n, seed)
            artifacts = build_scheme(config, graph, build_seed + seed)
            sampler = PairSampler("uniform_random", count=pairs, seed=seed)
            report = evaluate(artifacts, graph, sampler,
                              neighbor_sample=min(2000, pairs))
            log2n = math.log2(max(n, 2))
            rows.append({
                "scheme": config.scheme,
                "n": n,
                "seed": seed,
                "edges": graph.edge_count,
                "pairs": report.pair_count,
                "delivery": report.delivery_rate,
                "avg_stretch": report.avg_stretch,
                "mean_entries": report.entries_mean,
                "max_entries": report.entries_max,
                "mean_bits": report.bits_mean,
                "max_bits": report.bits_max,
                "entries_over_sqrt_nlogn": report.entries_max
                / math.sqrt(n * math.log(max(n, 2))),
                "bits_over_log2sq": report.bits_max / (log2n * log2n),
                "build_s": report.build_seconds,
                "eval_s": report.eval_seconds,
            })
    return rows
