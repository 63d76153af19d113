"""Immutable undirected graphs with stable per-node port numbering.

The graph is stored in CSR form (indptr/indices).  A node's neighbors are
sorted ascending, and the port index of a neighbor is its position in that
sorted list, so ports are stable for the graph's lifetime.  All schemes and
all BFS machinery in this package build on this representation.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

UNREACHABLE = -1


class GraphError(ValueError):
    """Invalid graph construction or graph-operation input."""


class EdgeListParseError(GraphError):
    """Malformed edge-list input; carries the 1-based line number."""

    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class Graph:
    """Undirected simple graph over dense node ids 0..n-1.

    Self-loops and duplicate edges are dropped at construction.  Instances
    are immutable and safe to share across threads.
    """

    __slots__ = ("n", "indptr", "indices", "names", "_edge_owner", "_hash")

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray,
                 names: Sequence[str] | None = None):
        self.n = int(n)
        self.indptr = indptr
        self.indices = indices
        self.names = list(names) if names is not None else None
        indptr.setflags(write=False)
        indices.setflags(write=False)
        self._edge_owner = None
        self._hash = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   names: Sequence[str] | None = None) -> "Graph":
        if n <= 0:
            raise GraphError("graph must have at least one node")
        seen = set()
        for u, v in edges:
            if u == v:
                continue
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) outside node range 0..{n - 1}")
            seen.add((u, v) if u < v else (v, u))
        if seen:
            arr = np.array(sorted(seen), dtype=np.int64)
            heads = np.concatenate([arr[:, 0], arr[:, 1]])
            tails = np.concatenate([arr[:, 1], arr[:, 0]])
        else:
            heads = np.empty(0, dtype=np.int64)
            tails = np.empty(0, dtype=np.int64)
        order = np.lexsort((tails, heads))
        heads = heads[order]
        tails = tails[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, heads + 1, 1)
        np.cumsum(indptr, out=indptr)
        return cls(n, indptr, tails.astype(np.int32), names)

    # -- basic accessors -------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    def degree(self, u: int) -> int:
        return int(self.indptr[u + 1] - self.indptr[u])

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.n else 0

    def neighbors(self, u: int) -> np.ndarray:
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    def neighbor_at(self, u: int, port: int) -> int:
        """Node reached from u via the given port index."""
        if not 0 <= port < self.degree(u):
            raise GraphError(f"node {u} has no port {port}")
        return int(self.indices[self.indptr[u] + port])

    def port_to(self, u: int, v: int) -> int:
        """Port index at u leading to neighbor v, or -1 if not adjacent."""
        row = self.neighbors(u)
        i = int(np.searchsorted(row, v))
        if i < len(row) and row[i] == v:
            return i
        return -1

    def iter_edges(self):
        """Yield each undirected edge once as (u, v) with u < v."""
        for u in range(self.n):
            for v in self.neighbors(u):
                if u < v:
                    yield u, int(v)

    def edge_owner_array(self) -> np.ndarray:
        """Per-CSR-position owner node, cached (used by port computations)."""
        if self._edge_owner is None:
            owner = np.repeat(np.arange(self.n, dtype=np.int32),
                              np.diff(self.indptr))
            owner.setflags(write=False)
            self._edge_owner = owner
        return self._edge_owner

    def hash_hex(self) -> str:
        """Stable hex digest of (n, edge set), for run provenance."""
        if self._hash is None:
            h = hashlib.sha256()
            h.update(f"n={self.n};".encode())
            h.update(self.indptr.tobytes())
            h.update(self.indices.tobytes())
            self._hash = h.hexdigest()[:16]
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_count})"


# -- parsing --------------------------------------------------------------


def parse_edge_list(text) -> Graph:
    """Parse an edge list ("tokenA tokenB" per line, '#' comments) to a Graph.

    Tokens may be arbitrary strings (e.g. AS numbers); they are mapped to
    dense ids in first-appearance order.  The original tokens are kept in
    ``Graph.names``.  Duplicate edges and self-loops are dropped.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    elif hasattr(text, "read"):
        text = text.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")
    ids: dict[str, int] = {}
    names: list[str] = []
    edges: list[tuple[int, int]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(
                f"expected 2 tokens, got {len(parts)}: {line!r}", line_no)
        pair = []
        for tok in parts:
            if tok not in ids:
                ids[tok] = len(names)
                names.append(tok)
            pair.append(ids[tok])
        edges.append((pair[0], pair[1]))
    if not names:
        raise GraphError("empty edge list: no edges found")
    return Graph.from_edges(len(names), edges, names)


# -- BFS machinery --------------------------------------------------------


@dataclass(frozen=True)
class DistanceVector:
    """Hop distances from one source plus the port toward it at every node.

    ``parent_port[v]`` is the smallest port index at v whose neighbor is one
    hop closer to the source (deterministic tie-breaking); -1 at the source
    and at unreachable nodes.
    """

    source: int
    dist: np.ndarray
    parent_port: np.ndarray

    def parent(self, graph: Graph, v: int) -> int:
        p = int(self.parent_port[v])
        if p < 0:
            return -1
        return graph.neighbor_at(v, p)


def bfs_distances(graph: Graph, sources, radius: int | None = None,
                  within: np.ndarray | None = None) -> np.ndarray:
    """Hop distances from a source (or several) via level-synchronous BFS.

    Unreached nodes get UNREACHABLE (-1).  ``radius`` truncates the search;
    ``within`` (boolean mask) confines the search to an induced subgraph.
    """
    indptr, indices = graph.indptr, graph.indices
    dist = np.full(graph.n, UNREACHABLE, dtype=np.int32)
    frontier = np.atleast_1d(np.asarray(sources, dtype=np.int64))
    if frontier.size == 0:
        return dist
    frontier = np.unique(frontier)
    if within is not None:
        frontier = frontier[within[frontier]]
        if frontier.size == 0:
            return dist
    dist[frontier] = 0
    level = 0
    while frontier.size:
        if radius is not None and level >= radius:
            break
        starts = indptr[frontier]
        counts = indptr[frontier + 1] - starts
        total = int(counts.sum())
        if total == 0:
            break
        base = np.repeat(starts, counts)
        step = np.arange(total, dtype=np.int64) - np.repeat(
            np.cumsum(counts) - counts, counts)
        nbrs = indices[base + step]
        nbrs = nbrs[dist[nbrs] < 0]
        if within is not None and nbrs.size:
            nbrs = nbrs[within[nbrs]]
        if nbrs.size == 0:
            break
        frontier = np.unique(nbrs).astype(np.int64)
        level += 1
        dist[frontier] = level
    return dist


def min_port_parents(graph: Graph, dist: np.ndarray) -> np.ndarray:
    """Smallest port at each node leading one hop closer to the BFS source.

    Works for any exact distance array (full, truncated, or confined to a
    subgraph); nodes with dist<=0 or no closer neighbor get -1.
    """
    indptr, indices = graph.indptr, graph.indices
    m = len(indices)
    if m == 0:
        return np.full(graph.n, -1, dtype=np.int32)
    owner = graph.edge_owner_array()
    good = dist[indices] == dist[owner] - 1
    # unreachable owners (dist -1) never match: dist-1 == -2 is not a value
    good &= dist[owner] > 0
    pos = np.where(good, np.arange(m, dtype=np.int64), m)
    starts = np.minimum(indptr[:-1], m - 1)  # reduceat rejects index == m
    first = np.minimum.reduceat(pos, starts)
    first[indptr[:-1] == indptr[1:]] = m
    ports = (first - indptr[:-1]).astype(np.int32)
    ports[first == m] = -1
    return ports


def bfs(graph: Graph, source: int) -> DistanceVector:
    """Exact hop distances plus deterministic parent ports from one source."""
    if not 0 <= source < graph.n:
        raise GraphError(f"source {source} not in graph")
    dist = bfs_distances(graph, source)
    return DistanceVector(source, dist, min_port_parents(graph, dist))


def k_nearest(graph: Graph, source: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    """The k nodes nearest to source (BFS order, distance then id ties).

    Returns (nodes, dists) sorted by (dist, id); includes the source itself.
    If fewer than k nodes are reachable, returns all of them.
    """
    indptr, indices = graph.indptr, graph.indices
    dist = np.full(graph.n, UNREACHABLE, dtype=np.int32)
    dist[source] = 0
    levels = [np.array([source], dtype=np.int64)]
    collected = 1
    frontier = levels[0]
    level = 0
    while frontier.size and collected < k:
        starts = indptr[frontier]
        counts = indptr[frontier + 1] - starts
        total = int(counts.sum())
        if total == 0:
            break
        base = np.repeat(starts, counts)
        step = np.arange(total, dtype=np.int64) - np.repeat(
            np.cumsum(counts) - counts, counts)
        nbrs = indices[base + step]
        nbrs = nbrs[dist[nbrs] < 0]
        if nbrs.size == 0:
            break
        frontier = np.unique(nbrs).astype(np.int64)
        level += 1
        dist[frontier] = level
        levels.append(frontier)
        collected += frontier.size
    nodes = np.concatenate(levels)
    if len(nodes) > k:
        nodes = nodes[:k]  # levels are id-sorted, so the cut is (dist, id) order
    return nodes, dist[nodes]


# -- shortest-path trees ---------------------------------------------------


@dataclass(frozen=True)
class Tree:
    """Rooted spanning tree of one connected component.

    ``parent``/``parent_port`` are -1 at the root; ``children`` lists are in
    ascending node id order; ``depth`` equals the BFS distance from the root.
    """

    root: int
    parent: np.ndarray
    parent_port: np.ndarray
    children: list[list[int]]
    depth: np.ndarray

    @property
    def n(self) -> int:
        return len(self.parent)

    def node_count(self) -> int:
        return int(np.count_nonzero(self.depth >= 0))


def shortest_path_tree(graph: Graph, root: int) -> Tree:
    """BFS tree from root with smallest-port tie-breaking."""
    dv = bfs(graph, root)
    parent = np.full(graph.n, -1, dtype=np.int32)
    reachable = dv.dist > 0
    idx = np.nonzero(reachable)[0]
    if idx.size:
        pos = graph.indptr[idx] + dv.parent_port[idx]
        parent[idx] = graph.indices[pos]
    children: list[list[int]] = [[] for _ in range(graph.n)]
    for v in idx:  # ascending id order
        children[parent[v]].append(int(v))
    return Tree(root, parent, dv.parent_port, children, dv.dist.copy())


def is_tree(graph: Graph) -> bool:
    """True if the graph is connected and has exactly n-1 edges."""
    if graph.edge_count != graph.n - 1:
        return False
    return bool((bfs_distances(graph, 0) >= 0).all())


def connected(graph: Graph) -> bool:
    return bool((bfs_distances(graph, 0) >= 0).all())


def largest_connected_component(graph: Graph) -> tuple[Graph, np.ndarray]:
    """Induced subgraph of the largest component, plus the old-id table.

    Ties between equally-sized components go to the one containing the
    smallest original id.  Returns (subgraph, orig_ids) where orig_ids[i]
    is the original id of new node i; original token names are carried over.
    """
    comp = np.full(graph.n, -1, dtype=np.int64)
    comp_sizes = []
    for s in range(graph.n):
        if comp[s] >= 0:
            continue
        cid = len(comp_sizes)
        d = bfs_distances(graph, s)
        members = d >= 0
        members &= comp < 0
        comp[members] = cid
        comp_sizes.append(int(members.sum()))
    best = int(np.argmax(comp_sizes))  # argmax takes the first max: smallest seed id
    orig_ids = np.nonzero(comp == best)[0]
    remap = np.full(graph.n, -1, dtype=np.int64)
    remap[orig_ids] = np.arange(len(orig_ids))
    edges = [(int(remap[u]), int(remap[v]))
             for u, v in graph.iter_edges() if comp[u] == best]
    names = None
    if graph.names is not None:
        names = [graph.names[i] for i in orig_ids]
    sub = Graph.from_edges(len(orig_ids), edges, names)
    return sub, orig_ids
