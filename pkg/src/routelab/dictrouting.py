"""Name-independent routing: flat identifiers resolved to locators en route.

A name-dependent underlay (landmark, tree cover, or their hybrid) does the
actual carrying.  Identifiers are hashed to ceil(sqrt(n)) colors; every
node stores the full identifier-to-locator dictionary for its own color,
shortest next hops to every node of its vicinity ball (the nearest
~sqrt(n ln n) nodes), and per color its nearest ball member of that color.
A packet carries only the destination's flat id; the source sends it to
its nearest matching-color node, which writes the locator into the header,
and the underlay takes over.  Ball sizes escalate at build time until
every node sees every color in its ball, so resolution never fails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, bfs_distances, k_nearest, min_port_parents
from .landmarks import LandmarkConfig
from .routing import (BuildError, NodeLabel, PacketHeader, RoutingFault,
                      RoutingTable, SizeContext, build, finish_artifacts,
                      header_from_label, register_scheme,
                      forward as scheme_forward)
from .treecover import HybridConfig, TreeCoverConfig

BALL_ESCALATIONS_CAP = 4

_MASK64 = (1 << 64) - 1


def mix64(x: int) -> int:
    """splitmix64 finalizer; fixed constants so color layouts are portable."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (x ^ (x >> 31)) & _MASK64


def color_count(n: int) -> int:
    return max(1, math.ceil(math.sqrt(n)))


def color_of(node_id: int, colors: int) -> int:
    return mix64(node_id) % colors


def ball_target(n: int, factor: float) -> int:
    base = math.sqrt(n * math.log(n)) if n > 2 else n
    return min(n, max(1, math.ceil(factor * base)))


@dataclass(frozen=True)
class NIConfig:
    scheme: str = "ni"
    underlay: str = "hybrid"  # tz | bc | hybrid
    ball_factor: float = 1.0


_UNDERLAY_CONFIGS = {
    "tz": LandmarkConfig,
    "bc": TreeCoverConfig,
    "hybrid": HybridConfig,
}


class NITable(RoutingTable):
    __slots__ = ("owner", "color", "ball_keys", "ball_ports", "reps",
                 "rep_labels", "dictionary", "dict_bits", "underlay_table")

    def __init__(self, owner, color, ball_keys, ball_ports, reps, rep_labels,
                 dictionary, dict_bits, underlay_table):
        self.owner = owner
        self.color = color
        self.ball_keys = ball_keys
        self.ball_ports = ball_ports
        self.reps = reps              # per color: nearest ball member of it
        self.rep_labels = rep_labels  # per color: that member's locator
        self.dictionary = dictionary  # id -> locator, for this node's color
        self.dict_bits = dict_bits
        self.underlay_table = underlay_table

    def ball_port(self, node: int) -> int:
        i = int(np.searchsorted(self.ball_keys, node))
        if i < len(self.ball_keys) and self.ball_keys[i] == node:
            return int(self.ball_ports[i])
        return -1

    def entry_count(self) -> int:
        return (self.underlay_table.entry_count() + len(self.ball_keys)
                + len(self.dictionary))

    def bit_count(self, ctx: SizeContext) -> int:
        bits = self.underlay_table.bit_count(ctx)
        bits += len(self.ball_keys) * (ctx.key_bits + ctx.port_bits)
        bits += len(self.dictionary) * ctx.key_bits + self.dict_bits
        # per-color resolver cache: id plus stored locator
        bits += len(self.reps) * ctx.key_bits
        bits += sum(lbl.bit_length for lbl in self.rep_labels if lbl is not None)
        return bits


def ni_build(config, graph: Graph, seed: int):
    if config.underlay not in _UNDERLAY_CONFIGS:
        raise BuildError(f"name-independent build: unknown underlay "
                         f"{config.underlay!r}")
    under = build(_UNDERLAY_CONFIGS[config.underlay](), graph, seed)
    n = graph.n
    colors_n = color_count(n)
    colors = np.array([color_of(v, colors_n) for v in range(n)], dtype=np.int64)
    present = np.unique(colors)

    factor = float(config.ball_factor)
    balls = None
    escalations = 0
    for attempt in range(BALL_ESCALATIONS_CAP + 1):
        size = ball_target(n, factor)
        balls = [k_nearest(graph, v, size)[0].astype(np.int32) for v in range(n)]
        missing = []
        for v in range(n):
            have = np.unique(colors[balls[v]])
            if len(have) < len(present):
                gaps = np.setdiff1d(present, have, assume_unique=True)
                missing.extend((v, int(c)) for c in gaps[:2])
            if len(missing) > 8:
                break
        if not missing:
            escalations = attempt
            break
        factor *= 2.0
    else:
        raise BuildError(f"name-independent build: ball coverage still "
                         f"incomplete after {BALL_ESCALATIONS_CAP} escalations; "
                         f"first uncovered (node, color) pairs: {missing[:4]}")

    # reverse pass: one BFS per routed-to node gives every ball's next hops
    wanted: dict[int, list[int]] = {}
    for v in range(n):
        for u in balls[v]:
            u = int(u)
            if u != v:
                wanted.setdefault(u, []).append(v)
    ball_ports: list[dict] = [dict() for _ in range(n)]
    for u in sorted(wanted):
        dist = bfs_distances(graph, u)
        ports = min_port_parents(graph, dist)
        for v in wanted[u]:
            ball_ports[v][u] = int(ports[v])

    # per-color dictionaries are shared: one mapping per color class
    class_dicts: dict[int, dict] = {int(c): {} for c in present}
    for v in range(n):
        class_dicts[int(colors[v])][v] = under.labels[v]
    class_bits = {c: sum(lbl.bit_length for lbl in d.values())
                  for c, d in class_dicts.items()}

    ctx = SizeContext.for_graph(graph)
    tables = []
    labels = []
    for v in range(n):
        keys = np.array(sorted(ball_ports[v]), dtype=np.int64)
        ports = np.array([ball_ports[v][int(k)] for k in keys], dtype=np.int32)
        if (ports < 0).any():
            raise BuildError(f"name-independent build: unreachable ball member "
                             f"at node {v}")
        reps = np.full(colors_n, -1, dtype=np.int64)
        rep_labels: list = [None] * colors_n
        for u in balls[v]:  # ball is in (distance, id) order: first hit is nearest
            cu = int(colors[u])
            if reps[cu] < 0:
                reps[cu] = int(u)
                rep_labels[cu] = under.labels[int(u)]
        own_color = int(colors[v])
        tables.append(NITable(v, own_color, keys, ports, reps, rep_labels,
                              class_dicts[own_color], class_bits[own_color],
                              under.tables[v]))
        labels.append(NodeLabel("ni", (v,), ctx.key_bits))
    meta = {
        "underlay": under,
        "underlay_name": config.underlay,
        "color_count": colors_n,
        "ball_size": size,
        "ball_factor_final": factor,
        "escalations": escalations,
        "dictionary_entries_total": sum(len(d) for d in class_dicts.values()),
    }
    return finish_artifacts("ni", graph, tables, labels, {}, meta)


def ni_accounting(artifacts) -> list[tuple[int, int]]:
    """Per-node (entries, bits) including ball routes and dictionaries."""
    ctx = artifacts.size_ctx
    return [(t.entry_count(), t.bit_count(ctx)) for t in artifacts.tables]


def ni_header(artifacts, dst: int) -> PacketHeader:
    # flat identifier only: no locator until a dictionary node writes one
    return PacketHeader(dst, None, artifacts.hop_budget)


def ni_forward(artifacts, current: int, header: PacketHeader):
    under = artifacts.meta["underlay"]
    scratch = header.scratch
    if "under" not in scratch:
        table = artifacts.tables[current]
        dst_color = color_of(header.dst, artifacts.meta["color_count"])
        if table.color == dst_color:
            locator = table.dictionary.get(header.dst)
            if locator is None:
                raise RoutingFault(f"dictionary at {current} lacks id "
                                   f"{header.dst}")
            scratch["under"] = header_from_label(under, header.dst, locator)
            scratch["resolved_at"] = current
        else:
            if "resolver" not in scratch:
                rep = int(table.reps[dst_color])
                if rep < 0:
                    raise RoutingFault(f"node {current} has no color-"
                                       f"{dst_color} resolver in its ball")
                scratch["resolver"] = rep
                scratch["resolver_label"] = table.rep_labels[dst_color]
                scratch["mode"] = "ball"
            resolver = scratch["resolver"]
            if scratch["mode"] == "ball":
                port = table.ball_port(resolver)
                if port >= 0:
                    return port
                # ball miss: fall back to underlay routing toward the
                # resolver, one way (prevents ball/underlay oscillation)
                scratch["mode"] = "underlay"
                scratch["to_resolver"] = header_from_label(
                    under, resolver, scratch["resolver_label"])
            step = scheme_forward(under, current, scratch["to_resolver"])
            if step is None:
                raise RoutingFault(f"reached resolver {resolver} without a "
                                   f"matching dictionary")
            return step
    return scheme_forward(under, current, scratch["under"])


register_scheme("ni", ni_build, ni_header, ni_forward)
