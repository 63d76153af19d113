"""Uniform routing-scheme contract plus route simulation and size accounting.

Every scheme registers three callables: a builder producing per-node tables
and labels, a header maker, and a forwarding function.  Forwarding decides
the next port from the current node's table, the current node's label, and
the packet header alone; route() iterates it and scores the realized path
against a BFS shortest-path oracle.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .graphs import Graph, bfs_distances, connected

DELIVER = None  # forward() returns a port index, or None to deliver


class RoutingFault(RuntimeError):
    """Forwarding found no matching entry and no fallback."""


class BuildError(RuntimeError):
    """Scheme construction failed; message names the stage."""


@dataclass(frozen=True)
class NodeLabel:
    """Scheme-assigned node address; payload layout is scheme-specific."""

    scheme: str
    payload: tuple
    bit_length: int


@dataclass(frozen=True)
class SizeContext:
    """Declared encoding widths used by the table-size formula.

    Every routing entry is charged key_bits + port_bits where
    key_bits = ceil(log2 n) and port_bits = ceil(log2 max_degree); labels
    stored as table payload are charged their own bit_length.  Schemes add
    private auxiliary state on top.
    """

    n: int
    key_bits: int
    port_bits: int

    @classmethod
    def for_graph(cls, graph: Graph) -> "SizeContext":
        return cls(graph.n, _bits_for(graph.n), _bits_for(max(graph.max_degree, 1)))


def _bits_for(count: int) -> int:
    return max(1, math.ceil(math.log2(count))) if count > 1 else 1


class RoutingTable:
    """Per-node forwarding state; concrete layout is scheme-specific.

    Subclasses report entry_count() (routing entries consulted at forwarding
    time) and aux_bits() (scheme-private state such as own labels or
    intervals).
    """

    owner: int

    def entry_count(self) -> int:
        raise NotImplementedError

    def aux_bits(self, ctx: SizeContext) -> int:
        return 0

    def bit_count(self, ctx: SizeContext) -> int:
        return self.entry_count() * (ctx.key_bits + ctx.port_bits) + self.aux_bits(ctx)


@dataclass
class PacketHeader:
    """Destination addressing a packet carries; the only non-local state.

    ``label`` is present for name-dependent schemes; name-independent
    packets carry the flat id only.  ``scratch`` is scheme-private and is
    mutated by forward() only.  The hop budget decreases once per hop.
    """

    dst: int
    label: Optional[NodeLabel]
    budget: int
    scratch: dict = field(default_factory=dict)


@dataclass(frozen=True)
class RouteResult:
    delivered: bool
    path: tuple
    hops: int
    shortest: int
    stretch: Optional[float]
    fault: Optional[str] = None  # "loop" | "routing" | None


@dataclass
class SchemeArtifacts:
    """Everything a built scheme knows: per-node tables and labels.

    ``directory`` may hold global metadata consulted at header-creation
    time only, never during forwarding.
    """

    scheme: str
    tables: Sequence[RoutingTable]
    labels: Sequence[NodeLabel]
    directory: dict
    hop_budget: int
    size_ctx: SizeContext
    graph_hash: str
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.size_ctx.n


# -- scheme registry -------------------------------------------------------

_BUILDERS: dict[str, Callable] = {}
_HEADER_MAKERS: dict[str, Callable] = {}
_FORWARDERS: dict[str, Callable] = {}
_FROM_LABEL: dict[str, Callable] = {}


def _default_from_label(artifacts, dst: int, label) -> "PacketHeader":
    return PacketHeader(dst, label, artifacts.hop_budget)


def register_scheme(name: str, builder, header_maker, forwarder,
                    from_label=None):
    _BUILDERS[name] = builder
    _HEADER_MAKERS[name] = header_maker
    _FORWARDERS[name] = forwarder
    _FROM_LABEL[name] = from_label or _default_from_label


def header_from_label(artifacts: "SchemeArtifacts", dst: int,
                      label) -> "PacketHeader":
    """Header for dst from an already-known label (no global lookups).

    Used by name-independent routing, which learns destination locators
    from dictionary tables en route.
    """
    return _FROM_LABEL[artifacts.scheme](artifacts, dst, label)


def scheme_names() -> list[str]:
    return sorted(_BUILDERS)


def build(config, graph: Graph, seed: int = 0) -> SchemeArtifacts:
    """Build a scheme's artifacts on a connected graph, deterministically."""
    name = config.scheme
    if name not in _BUILDERS:
        raise BuildError(f"unknown scheme {name!r}; known: {scheme_names()}")
    if graph.n > 1 and not connected(graph):
        raise BuildError(f"{name}: input graph is disconnected; "
                         "pass the largest connected component")
    t0 = time.perf_counter()
    artifacts = _BUILDERS[name](config, graph, seed)
    artifacts.meta.setdefault("build_seconds", time.perf_counter() - t0)
    if len(artifacts.tables) != graph.n or len(artifacts.labels) != graph.n:
        raise BuildError(f"{name}: build produced incomplete artifacts")
    return artifacts


def make_header(artifacts: SchemeArtifacts, dst: int) -> PacketHeader:
    if not 0 <= dst < artifacts.n:
        raise ValueError(f"destination {dst} not in graph")
    return _HEADER_MAKERS[artifacts.scheme](artifacts, dst)


def forward(artifacts: SchemeArtifacts, current: int, header: PacketHeader):
    """One forwarding decision: a port index, or DELIVER (None)."""
    return _FORWARDERS[artifacts.scheme](artifacts, current, header)


def route(artifacts: SchemeArtifacts, graph: Graph, src: int, dst: int,
          shortest: Optional[int] = None) -> RouteResult:
    """Simulate forwarding from src to dst and score it against BFS.

    ``shortest`` may be supplied by a caller holding a distance oracle;
    otherwise one BFS from src is run.  src == dst delivers with 0 hops and
    undefined stretch (excluded from averages).
    """
    if shortest is None:
        shortest = int(bfs_distances(graph, src)[dst])
    if src == dst:
        return RouteResult(True, (src,), 0, 0, None)
    header = make_header(artifacts, dst)
    fwd = _FORWARDERS[artifacts.scheme]
    cur = src
    path = [src]
    while True:
        try:
            step = fwd(artifacts, cur, header)
        except RoutingFault:
            return RouteResult(False, tuple(path), len(path) - 1, shortest,
                               None, fault="routing")
        if step is DELIVER:
            if cur != dst:
                return RouteResult(False, tuple(path), len(path) - 1, shortest,
                                   None, fault="routing")
            hops = len(path) - 1
            stretch = hops / shortest if shortest >= 1 else None
            return RouteResult(True, tuple(path), hops, shortest, stretch)
        if header.budget <= 0:
            return RouteResult(False, tuple(path), len(path) - 1, shortest,
                               None, fault="loop")
        header.budget -= 1
        cur = graph.neighbor_at(cur, step)
        path.append(cur)


def table_size(artifacts: SchemeArtifacts, node: int) -> tuple[int, int]:
    """(entries, bits) for one node's table under the declared encoding."""
    t = artifacts.tables[node]
    return t.entry_count(), t.bit_count(artifacts.size_ctx)


def estimate_avg_distance(graph: Graph, samples: int = 32) -> float:
    """Mean pairwise hop distance from a deterministic source sample."""
    if graph.n <= 1:
        return 0.0
    step = max(1, graph.n // samples)
    sources = range(0, graph.n, step)
    total = 0.0
    count = 0
    for s in sources:
        d = bfs_distances(graph, s)
        reachable = d > 0
        total += float(d[reachable].sum())
        count += int(reachable.sum())
    return total / count if count else 0.0


def default_hop_budget(avg_distance: float) -> int:
    return max(64, 8 * math.ceil(avg_distance))


def finish_artifacts(scheme: str, graph: Graph, tables, labels, directory,
                     meta: dict | None = None) -> SchemeArtifacts:
    """Common artifact assembly: size context, hop budget, provenance."""
    avg_d = estimate_avg_distance(graph)
    meta = dict(meta or {})
    meta.setdefault("avg_distance_estimate", avg_d)
    meta.setdefault(
        "bit_formula",
        "entries*(ceil(log2 n)+ceil(log2 max_degree)) + aux bits; "
        "dictionary entries charge key bits + stored-locator bits")
    return SchemeArtifacts(
        scheme=scheme,
        tables=tables,
        labels=labels,
        directory=directory,
        hop_budget=default_hop_budget(avg_d),
        size_ctx=SizeContext.for_graph(graph),
        graph_hash=graph.hash_hex(),
        meta=meta,
    )
