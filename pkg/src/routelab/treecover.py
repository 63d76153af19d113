"""Tree-cover routing for scale-free graphs, and the landmark/cover hybrid.

The cover holds one shortest-path tree rooted at the highest-degree node
plus a small number of extra trees rooted where non-tree edges concentrate
(radius-2 fringe score).  A source computes the exact tree distance to the
destination inside every tree from the two labels alone, stamps the best
tree into the header, and the packet stays in that tree.  The hybrid runs
a source-side dry run of both sub-schemes and stamps the shorter one.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .graphs import Graph, shortest_path_tree
from .landmarks import LandmarkConfig
from .routing import (BuildError, NodeLabel, PacketHeader, RoutingFault,
                      RoutingTable, SizeContext, build, finish_artifacts,
                      make_header, register_scheme, forward as scheme_forward)
from .treeroute import (build_tree_routing, tree_distance, tree_label_bits,
                        tree_step)


@dataclass(frozen=True)
class TreeCoverConfig:
    scheme: str = "bc"
    trees: int = 5  # extra trees beyond the root tree


@dataclass(frozen=True)
class HybridConfig:
    scheme: str = "hybrid"
    tz: LandmarkConfig = field(default_factory=LandmarkConfig)
    bc: TreeCoverConfig = field(default_factory=TreeCoverConfig)


# -- tree cover ---------------------------------------------------------------


def fringe_scores(graph: Graph, tree) -> np.ndarray:
    """Per-node count of non-tree edges with both ends within distance 2."""
    n = graph.n
    tree_pairs = set()
    for v in range(n):
        p = int(tree.parent[v])
        if p >= 0:
            tree_pairs.add((v, p) if v < p else (p, v))
    nontree = [(u, v) for u, v in graph.iter_edges() if (u, v) not in tree_pairs]
    scores = np.zeros(n, dtype=np.int64)
    ball_cache: dict[int, np.ndarray] = {}

    def ball2(x: int) -> np.ndarray:
        got = ball_cache.get(x)
        if got is None:
            nbrs = graph.neighbors(x)
            starts = graph.indptr[nbrs]
            counts = graph.indptr[nbrs + 1] - starts
            total = int(counts.sum())
            base = np.repeat(starts, counts)
            step = np.arange(total, dtype=np.int64) - np.repeat(
                np.cumsum(counts) - counts, counts)
            two_hop = graph.indices[base + step]
            got = np.unique(np.concatenate(
                [np.array([x], dtype=np.int64), nbrs.astype(np.int64), two_hop]))
            ball_cache[x] = got
        return got

    for u, v in nontree:
        both = np.intersect1d(ball2(u), ball2(v), assume_unique=True)
        scores[both] += 1
    return scores


class CoverTable(RoutingTable):
    __slots__ = ("owner", "cover")

    def __init__(self, owner: int, cover: list):
        self.owner = owner
        self.cover = cover

    def step(self, tree_idx: int, dst_fields):
        return tree_step(self.cover[tree_idx], self.owner, dst_fields)

    def own_fields(self, tree_idx: int):
        return self.cover[tree_idx].label_fields(self.owner)

    def entry_count(self) -> int:
        total = 0
        for tr in self.cover:
            if tr.parent_port[self.owner] >= 0:
                total += 1
            if tr.heavy_child[self.owner] >= 0:
                total += 1
        return total

    def aux_bits(self, ctx: SizeContext) -> int:
        bits = 0
        for tr in self.cover:
            bits += 3 * ctx.key_bits
            if tr.heavy_child[self.owner] >= 0:
                bits += 2 * ctx.key_bits
        return bits


def treecover_build(config, graph: Graph, seed: int):
    extra = int(config.trees)
    if extra < 0:
        raise BuildError("tree cover: the extra-tree count cannot be negative")
    if extra >= graph.n:
        warnings.warn(f"tree cover: clamping extra trees from {extra} to "
                      f"{graph.n - 1}")
        extra = graph.n - 1
    degrees = graph.degrees
    root0 = int(np.lexsort((np.arange(graph.n), -degrees))[0])
    t0 = shortest_path_tree(graph, root0)
    roots = [root0]
    if extra > 0 and graph.edge_count > graph.n - 1:
        scores = fringe_scores(graph, t0)
        order = np.lexsort((np.arange(graph.n), -degrees, -scores))
        for r in order:
            r = int(r)
            if len(roots) > extra:
                break
            if r != root0 and scores[r] > 0:
                roots.append(r)
    cover = [build_tree_routing(graph, t0)]
    for r in roots[1:]:
        cover.append(build_tree_routing(graph, shortest_path_tree(graph, r)))
    ctx = SizeContext.for_graph(graph)
    tables = [CoverTable(v, cover) for v in range(graph.n)]
    labels = []
    for v in range(graph.n):
        fields = tuple(tr.label_fields(v) for tr in cover)
        bits = sum(tree_label_bits(f, ctx.key_bits, ctx.port_bits) for f in fields)
        labels.append(NodeLabel("bc", fields, bits))
    meta = {"roots": roots, "tree_count": len(cover)}
    return finish_artifacts("bc", graph, tables, labels, {}, meta)


def treecover_header(artifacts, dst: int) -> PacketHeader:
    return PacketHeader(dst, artifacts.labels[dst], artifacts.hop_budget)


def best_tree(table: CoverTable, dst_fields: tuple) -> tuple[int, int]:
    """(tree index, exact tree distance) minimizing the label-computed
    distance; ties go to the lower tree index."""
    best_idx = 0
    best_dist = None
    for i in range(len(table.cover)):
        d = tree_distance(table.own_fields(i), dst_fields[i])
        if best_dist is None or d < best_dist:
            best_idx, best_dist = i, d
    return best_idx, best_dist


def treecover_forward(artifacts, current: int, header: PacketHeader):
    table = artifacts.tables[current]
    tree_idx = header.scratch.get("tree")
    if tree_idx is None:
        tree_idx, dist = best_tree(table, header.label.payload)
        header.scratch["tree"] = tree_idx
        header.scratch["tree_dist"] = dist
    return table.step(tree_idx, header.label.payload[tree_idx])


register_scheme("bc", treecover_build, treecover_header, treecover_forward)


def bc_table_bound_check(sizes=(1000, 4000, 16000), seeds=5, trees=5,
                         edges_per_node=2, pairs=500) -> dict:
    """Empirical polylog table check across a size sweep.

    Builds the tree cover on generated power-law graphs and reports, per
    size, the maximum entries/bits and the ratio max_bits / (log2 n)^2.
    The ratio at the largest size must stay within 2x its value at the
    smallest; a blow-up raises BuildError.
    """
    from .evaluation import scaling_sweep
    from .generators import gen_power_law

    rows = scaling_sweep(TreeCoverConfig(trees=trees),
                         lambda n, seed: gen_power_law(n, edges_per_node, seed),
                         sizes=list(sizes), seeds=seeds, pairs=pairs)
    per_size = {}
    for n in sizes:
        mine = [r for r in rows if r["n"] == n]
        per_size[n] = {
            "max_entries": max(r["max_entries"] for r in mine),
            "max_bits": max(r["max_bits"] for r in mine),
            "bits_over_log2sq": sum(r["bits_over_log2sq"] for r in mine)
            / len(mine),
        }
    smallest, largest = min(sizes), max(sizes)
    ratio0 = per_size[smallest]["bits_over_log2sq"]
    ratio1 = per_size[largest]["bits_over_log2sq"]
    if ratio1 > 2.0 * ratio0:
        raise BuildError(f"tree-cover tables outgrew the polylog bound: "
                         f"ratio {ratio0:.2f} -> {ratio1:.2f}")
    return {"sizes": per_size, "rows": rows,
            "ratio_smallest": ratio0, "ratio_largest": ratio1}


# -- hybrid: pointwise minimum of the two sub-schemes -------------------------


class HybridTable(RoutingTable):
    __slots__ = ("owner", "parts")

    def __init__(self, owner: int, parts: tuple):
        self.owner = owner
        self.parts = parts

    def entry_count(self) -> int:
        return sum(p.entry_count() for p in self.parts)

    def bit_count(self, ctx: SizeContext) -> int:
        return sum(p.bit_count(ctx) for p in self.parts)


def hybrid_build(config, graph: Graph, seed: int):
    sub_tz = build(config.tz, graph, seed)
    sub_bc = build(config.bc, graph, seed)
    tables = [HybridTable(v, (sub_tz.tables[v], sub_bc.tables[v]))
              for v in range(graph.n)]
    labels = [
        NodeLabel("hybrid",
                  (sub_tz.labels[v].payload, sub_bc.labels[v].payload),
                  sub_tz.labels[v].bit_length + sub_bc.labels[v].bit_length)
        for v in range(graph.n)
    ]
    meta = {"sub": {"tz": sub_tz, "bc": sub_bc}, "graph": graph}
    return finish_artifacts("hybrid", graph, tables, labels, {}, meta)


def hybrid_from_label(artifacts, dst: int, label: NodeLabel) -> PacketHeader:
    # sub-headers are rebuilt from the combined payload alone so a learned
    # locator suffices (no global label lookups)
    ctx = artifacts.size_ctx
    tz_payload, bc_payload = label.payload
    tz_label = NodeLabel("tz", tz_payload, 2 * ctx.key_bits + ctx.port_bits)
    bc_bits = sum(tree_label_bits(f, ctx.key_bits, ctx.port_bits)
                  for f in bc_payload)
    bc_label = NodeLabel("bc", bc_payload, bc_bits)
    sub = artifacts.meta["sub"]
    return PacketHeader(
        dst, label, artifacts.hop_budget,
        scratch={"tz": PacketHeader(dst, tz_label, sub["tz"].hop_budget),
                 "bc": PacketHeader(dst, bc_label, sub["bc"].hop_budget)})


def hybrid_header(artifacts, dst: int) -> PacketHeader:
    return hybrid_from_label(artifacts, dst, artifacts.labels[dst])


def simulate_hops(artifacts, graph: Graph, src: int, header: PacketHeader):
    """Walk a sub-scheme's forwarding to count hops; None on any fault."""
    cur = src
    hops = 0
    budget = artifacts.hop_budget
    while True:
        try:
            step = scheme_forward(artifacts, cur, header)
        except RoutingFault:
            return None
        if step is None:
            return hops
        if budget <= 0:
            return None
        budget -= 1
        cur = graph.neighbor_at(cur, step)
        hops += 1


def hybrid_forward(artifacts, current: int, header: PacketHeader):
    sub = artifacts.meta["sub"]
    pick = header.scratch.get("pick")
    if pick is None:
        # source-side dry run of both sub-schemes; the choice is stamped
        # into the header and forwarding stays within it afterwards
        graph = artifacts.meta["graph"]
        trial_tz = make_header(sub["tz"], header.dst)
        trial_bc = make_header(sub["bc"], header.dst)
        hops_tz = simulate_hops(sub["tz"], graph, current, trial_tz)
        hops_bc = simulate_hops(sub["bc"], graph, current, trial_bc)
        if hops_tz is None and hops_bc is None:
            raise RoutingFault(f"hybrid: both sub-schemes fail from {current}")
        if hops_bc is None or (hops_tz is not None and hops_tz <= hops_bc):
            pick = "tz"
        else:
            pick = "bc"
        header.scratch["pick"] = pick
        header.scratch["dry_hops"] = {"tz": hops_tz, "bc": hops_bc}
    return scheme_forward(sub[pick], current, header.scratch[pick])


register_scheme("hybrid", hybrid_build, hybrid_header, hybrid_forward,
                from_label=hybrid_from_label)
