"""Baseline schemes: trivial shortest-path, tree, grid, and hierarchical.

Trivial keeps a next-hop port for every destination.  Tree routing uses
DFS-interval labels with heavy-path light-edge lists (O(1) entries per
node).  Grid routing stores only the node's own coordinates and one port
per axis direction.  The hierarchical baseline clusters the graph bottom-up
with greedy BFS balls and routes by descending the deepest common cluster.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import generators
from .graphs import Graph, bfs_distances, min_port_parents, is_tree, shortest_path_tree
from .routing import (NodeLabel, PacketHeader, RoutingFault, RoutingTable,
                      BuildError, SizeContext, finish_artifacts, register_scheme,
                      _bits_for)
from .treeroute import (build_tree_routing, tree_label_bits, tree_step)


# -- trivial shortest-path routing ------------------------------------------


@dataclass(frozen=True)
class TrivialConfig:
    scheme: str = "trivial"


class TrivialTable(RoutingTable):
    """View of one column of the shared destination-indexed port matrix."""

    __slots__ = ("owner", "_ports", "_n")

    def __init__(self, owner: int, ports: np.ndarray):
        self.owner = owner
        self._ports = ports
        self._n = ports.shape[0] if ports.size else 1

    def port_toward(self, dst: int) -> int:
        return int(self._ports[dst, self.owner])

    def entry_count(self) -> int:
        return self._n - 1


def _port_matrix(graph: Graph) -> np.ndarray:
    """ports[t, v] = smallest next-hop port at v toward destination t."""
    dtype = np.int16 if graph.max_degree < 2 ** 15 else np.int32
    ports = np.empty((graph.n, graph.n), dtype=dtype)
    for t in range(graph.n):
        dist = bfs_distances(graph, t)
        ports[t] = min_port_parents(graph, dist)
    return ports


def trivial_build(config, graph: Graph, seed: int):
    ports = _port_matrix(graph)
    key_bits = _bits_for(graph.n)
    tables = [TrivialTable(v, ports) for v in range(graph.n)]
    labels = [NodeLabel("trivial", (v,), key_bits) for v in range(graph.n)]
    return finish_artifacts("trivial", graph, tables, labels, {})


def trivial_header(artifacts, dst: int) -> PacketHeader:
    return PacketHeader(dst, artifacts.labels[dst], artifacts.hop_budget)


def trivial_forward(artifacts, current: int, header: PacketHeader):
    if current == header.dst:
        return None
    port = artifacts.tables[current].port_toward(header.dst)
    if port < 0:
        raise RoutingFault(f"no next hop at {current} toward {header.dst}")
    return port


register_scheme("trivial", trivial_build, trivial_header, trivial_forward)


# -- tree routing ------------------------------------------------------------


@dataclass(frozen=True)
class TreeConfig:
    scheme: str = "tree"
    root: int = 0


class TreeTable(RoutingTable):
    __slots__ = ("owner", "_tr")

    def __init__(self, owner: int, tr):
        self.owner = owner
        self._tr = tr

    def step(self, dst_fields):
        return tree_step(self._tr, self.owner, dst_fields)

    def entry_count(self) -> int:
        n = 0
        if self._tr.parent_port[self.owner] >= 0:
            n += 1
        if self._tr.heavy_child[self.owner] >= 0:
            n += 1
        return n

    def aux_bits(self, ctx: SizeContext) -> int:
        bits = 3 * ctx.key_bits  # own interval and depth
        if self._tr.heavy_child[self.owner] >= 0:
            bits += 2 * ctx.key_bits  # heavy child interval
        return bits


def tree_build(config, graph: Graph, seed: int):
    if not is_tree(graph):
        raise BuildError("tree scheme: input graph is not a tree")
    root = getattr(config, "root", 0)
    tr = build_tree_routing(graph, shortest_path_tree(graph, root))
    ctx = SizeContext.for_graph(graph)
    tables = [TreeTable(v, tr) for v in range(graph.n)]
    labels = [
        NodeLabel("tree", tr.label_fields(v),
                  tree_label_bits(tr.label_fields(v), ctx.key_bits, ctx.port_bits))
        for v in range(graph.n)
    ]
    meta = {"root": root, "max_light_entries": tr.max_light_len()}
    return finish_artifacts("tree", graph, tables, labels, {}, meta)


def tree_header(artifacts, dst: int) -> PacketHeader:
    return PacketHeader(dst, artifacts.labels[dst], artifacts.hop_budget)


def tree_forward(artifacts, current: int, header: PacketHeader):
    return artifacts.tables[current].step(header.label.payload)


register_scheme("tree", tree_build, tree_header, tree_forward)


# -- grid coordinate routing -------------------------------------------------


@dataclass(frozen=True)
class GridConfig:
    scheme: str = "grid"
    dims: tuple = ()


class GridTable(RoutingTable):
    __slots__ = ("owner", "coord", "axis_ports")

    def __init__(self, owner: int, coord: tuple, axis_ports: tuple):
        self.owner = owner
        self.coord = coord
        self.axis_ports = axis_ports  # per axis (port_minus, port_plus), -1 absent

    def entry_count(self) -> int:
        return 1 + sum(1 for pair in self.axis_ports for p in pair if p >= 0)

    def aux_bits(self, ctx: SizeContext) -> int:
        return 0  # the own-coordinate entry is already counted


def grid_build(config, graph: Graph, seed: int):
    dims = tuple(int(d) for d in config.dims)
    if not dims:
        raise BuildError("grid scheme: dims are required")
    expected = generators.gen_grid(dims)
    if expected.n != graph.n or not np.array_equal(expected.indptr, graph.indptr) \
            or not np.array_equal(expected.indices, graph.indices):
        raise BuildError(f"grid scheme: graph does not match a {dims} grid")
    coords = generators.grid_coordinates(dims)
    coord_bits = sum(_bits_for(d) for d in dims)
    tables = []
    labels = []
    for v in range(graph.n):
        coord = tuple(int(c) for c in coords[v])
        axis_ports = []
        for axis, d in enumerate(dims):
            down = up = -1
            if coord[axis] > 0:
                target = coords[v].copy()
                target[axis] -= 1
                down = graph.port_to(v, _grid_index(target, dims))
            if coord[axis] + 1 < d:
                target = coords[v].copy()
                target[axis] += 1
                up = graph.port_to(v, _grid_index(target, dims))
            axis_ports.append((down, up))
        tables.append(GridTable(v, coord, tuple(axis_ports)))
        labels.append(NodeLabel("grid", coord, coord_bits))
    return finish_artifacts("grid", graph, tables, labels, {}, {"dims": dims})


def _grid_index(coord, dims) -> int:
    idx = 0
    for c, d in zip(coord, dims):
        idx = idx * d + int(c)
    return idx


def grid_header(artifacts, dst: int) -> PacketHeader:
    return PacketHeader(dst, artifacts.labels[dst], artifacts.hop_budget)


def grid_forward(artifacts, current: int, header: PacketHeader):
    table = artifacts.tables[current]
    target = header.label.payload
    for axis, own in enumerate(table.coord):
        delta = target[axis] - own
        if delta:
            port = table.axis_ports[axis][1 if delta > 0 else 0]
            if port < 0:
                raise RoutingFault(f"grid routing: missing axis port at {current}")
            return port
    return None


register_scheme("grid", grid_build, grid_header, grid_forward)


# -- hierarchical clustering baseline ----------------------------------------


@dataclass(frozen=True)
class HierConfig:
    scheme: str = "hier"
    cluster_target: int = 4


class HierTable(RoutingTable):
    __slots__ = ("owner", "path", "intra_keys", "intra_ports", "gateways")

    def __init__(self, owner, path, intra_keys, intra_ports, gateways):
        self.owner = owner
        self.path = path                # cluster id at each level, bottom-up
        self.intra_keys = intra_keys    # sorted node ids in own lowest cluster
        self.intra_ports = intra_ports
        self.gateways = gateways        # per level: (sorted sibling ids, ports)

    def intra_port(self, dst: int) -> int:
        i = int(np.searchsorted(self.intra_keys, dst))
        if i < len(self.intra_keys) and self.intra_keys[i] == dst:
            return int(self.intra_ports[i])
        return -1

    def gateway_port(self, level: int, cluster_id: int) -> int:
        keys, ports = self.gateways[level]
        i = int(np.searchsorted(keys, cluster_id))
        if i < len(keys) and keys[i] == cluster_id:
            return int(ports[i])
        return -1

    def entry_count(self) -> int:
        return len(self.intra_keys) + sum(len(k) for k, _ in self.gateways)

    def aux_bits(self, ctx: SizeContext) -> int:
        return len(self.path) * ctx.key_bits  # own cluster path


def _grow_clusters(n_items: int, adjacency, weight_order, target: int) -> np.ndarray:
    """Greedy BFS-ball partition; returns the cluster id of each item.

    Seeds are taken in ``weight_order`` (highest degree first); each ball
    grows in BFS order over still-unassigned items until it reaches
    ``target`` members or its unassigned surroundings are exhausted.
    Stranded singletons (a seed whose neighbors were all taken) are merged
    into the adjacent cluster with the smallest id, so every cluster has at
    least two members and the level count stays logarithmic.
    """
    cluster = np.full(n_items, -1, dtype=np.int64)
    sizes = []
    for seed in weight_order:
        if cluster[seed] >= 0:
            continue
        next_id = len(sizes)
        members = [seed]
        cluster[seed] = next_id
        queue = [seed]
        qi = 0
        while qi < len(queue) and len(members) < target:
            u = queue[qi]
            qi += 1
            for v in adjacency(u):
                if cluster[v] < 0 and len(members) < target:
                    cluster[v] = next_id
                    members.append(v)
                    queue.append(v)
        sizes.append(len(members))
    if n_items > 1:
        for v in range(n_items):
            cid = int(cluster[v])
            if sizes[cid] == 1:
                nbr_clusters = sorted({int(cluster[u]) for u in adjacency(v)
                                       if cluster[u] != cid})
                if nbr_clusters:
                    cluster[v] = nbr_clusters[0]
                    sizes[cid] -= 1
                    sizes[nbr_clusters[0]] += 1
    # compact ids to 0..k-1 preserving relative order
    used = np.unique(cluster)
    remap = np.full(int(used.max()) + 1, -1, dtype=np.int64)
    remap[used] = np.arange(len(used))
    return remap[cluster]


def hier_build(config, graph: Graph, seed: int):
    target = max(2, int(config.cluster_target))
    n = graph.n
    # level 0: BFS balls over nodes, highest-degree seeds first
    degrees = graph.degrees
    order = np.lexsort((np.arange(n), -degrees))
    node_cluster = _grow_clusters(n, graph.neighbors, order, target)
    levels = [node_cluster]
    # higher levels: same growth on the cluster adjacency graph
    while int(levels[-1].max()) + 1 > 1:
        prev = levels[-1]
        k = int(prev.max()) + 1
        pair_adj: list[set[int]] = [set() for _ in range(k)]
        cu = prev[graph.edge_owner_array()]
        cv = prev[graph.indices]
        for a, b in zip(cu.tolist(), cv.tolist()):
            if a != b:
                pair_adj[a].add(b)
        sizes = np.bincount(prev, minlength=k)
        weight = np.array([len(s) for s in pair_adj], dtype=np.int64)
        order_c = np.lexsort((np.arange(k), -sizes, -weight))
        grouping = _grow_clusters(k, lambda c: sorted(pair_adj[c]), order_c, target)
        levels.append(grouping[prev])
    paths = np.stack(levels, axis=1)  # paths[v, level]

    # intra-cluster next hops, confined to the cluster's induced subgraph
    intra_keys = [None] * n
    intra_ports = [None] * n
    base = levels[0]
    for cid in range(int(base.max()) + 1):
        members = np.nonzero(base == cid)[0]
        mask = np.zeros(n, dtype=bool)
        mask[members] = True
        for t in members:
            dist = bfs_distances(graph, int(t), within=mask)
            ports = min_port_parents(graph, dist)
            for v in members:
                if intra_keys[v] is None:
                    intra_keys[v] = []
                    intra_ports[v] = []
                if v != t:
                    if ports[v] < 0:
                        raise BuildError("hier: lowest cluster is not internally "
                                         "connected")
                    intra_keys[v].append(int(t))
                    intra_ports[v].append(int(ports[v]))

    # gateway next hops: per level, per sibling cluster inside the parent,
    # a multi-source BFS from the sibling confined to the parent cluster
    gateways: list[list] = [[] for _ in range(n)]
    for level in range(len(levels) - 1):
        child = levels[level]
        parent = levels[level + 1]
        per_node_entries: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for pid in range(int(parent.max()) + 1):
            in_parent = parent == pid
            sibling_ids = np.unique(child[in_parent])
            if len(sibling_ids) < 2:
                continue
            for sid in sibling_ids:
                sources = np.nonzero((child == sid) & in_parent)[0]
                dist = bfs_distances(graph, sources, within=in_parent)
                ports = min_port_parents(graph, dist)
                for v in np.nonzero(in_parent & (child != sid))[0]:
                    if ports[v] < 0:
                        raise BuildError("hier: parent cluster is not internally "
                                         "connected")
                    per_node_entries[v].append((int(sid), int(ports[v])))
        for v in range(n):
            entries = sorted(per_node_entries[v])
            keys = np.array([e[0] for e in entries], dtype=np.int64)
            ports = np.array([e[1] for e in entries], dtype=np.int32)
            gateways[v].append((keys, ports))

    ctx = SizeContext.for_graph(graph)
    tables = []
    labels = []
    for v in range(n):
        path = tuple(int(c) for c in paths[v])
        keys = np.array(sorted(intra_keys[v] or []), dtype=np.int64)
        port_map = dict(zip(intra_keys[v] or [], intra_ports[v] or []))
        ports = np.array([port_map[int(kk)] for kk in keys], dtype=np.int32)
        tables.append(HierTable(v, path, keys, ports, tuple(gateways[v])))
        labels.append(NodeLabel("hier", (v, path),
                                ctx.key_bits * (1 + len(path))))
    meta = {"cluster_target": target, "levels": len(levels),
            "clusters_per_level": [int(l.max()) + 1 for l in levels]}
    artifacts = finish_artifacts("hier", graph, tables, labels, {}, meta)
    # descending one cluster level per leg can legitimately cost a full
    # induced-subgraph diameter each; scale the budget with the hierarchy
    artifacts.hop_budget *= max(1, len(levels))
    return artifacts


def hier_header(artifacts, dst: int) -> PacketHeader:
    return PacketHeader(dst, artifacts.labels[dst], artifacts.hop_budget)


def hier_forward(artifacts, current: int, header: PacketHeader):
    dst, dst_path = header.label.payload
    if current == dst:
        return None
    table = artifacts.tables[current]
    own_path = table.path
    if own_path[0] == dst_path[0]:
        port = table.intra_port(dst)
        if port < 0:
            raise RoutingFault(f"hier: {dst} missing from cluster table of {current}")
        return port
    for level in range(1, len(own_path)):
        if own_path[level] == dst_path[level]:
            port = table.gateway_port(level - 1, dst_path[level - 1])
            if port < 0:
                raise RoutingFault(f"hier: no gateway at {current} toward cluster "
                                   f"{dst_path[level - 1]} (level {level - 1})")
            return port
    raise RoutingFault(f"hier: no common cluster between {current} and {dst}")


register_scheme("hier", hier_build, hier_header, hier_forward)
