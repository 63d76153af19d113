"""Landmark routing with clusters: name-dependent worst-case stretch 3.

A landmark set A is selected (randomized sampling with oversized-cluster
promotion, a greedy dominating set, or an explicit set).  Every node keeps
next hops to all landmarks and to every node in its cluster
C(v) = {w != v : d(w,v) < d(w, L(w))}; strict inequality, so ties route via
the landmark.  Labels carry (v, L(v), the port at L(v) toward v), and a
packet for an uncovered destination is forwarded to L(dst) first.
"""

from __future__ import annotations

import heapq
import math
import random
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, bfs_distances, min_port_parents, shortest_path_tree
from .routing import (BuildError, NodeLabel, PacketHeader, RoutingFault,
                      RoutingTable, SizeContext, finish_artifacts,
                      register_scheme)

PROMOTION_ROUNDS_CAP = 50


@dataclass(frozen=True)
class LandmarkConfig:
    scheme: str = "tz"
    mode: str = "tz_random"  # tz_random | cowen_dominating | explicit
    landmarks: tuple = ()    # used when mode == "explicit"


@dataclass
class LandmarkAssignment:
    """Landmark set plus each node's nearest landmark and per-landmark ports."""

    landmarks: np.ndarray          # sorted landmark ids
    nearest: np.ndarray            # L(v); ties to the smaller landmark id
    dist_to_landmark: np.ndarray   # d(v, L(v))
    ports_toward: dict             # landmark id -> per-node port toward it
    rounds: int = 0


@dataclass
class ClusterMap:
    """members[v] = sorted C(v); ports[v][i] = next-hop port toward members[v][i]."""

    members: list
    ports: list

    def size(self, v: int) -> int:
        return len(self.members[v])


def _sample_probability(n: int) -> float:
    # expected |A| ~ sqrt(n / ln n): matches the sqrt(n log n)-entry table
    # target; promotion below keeps clusters below the declared threshold
    if n < 3:
        return 1.0
    return min(1.0, 1.0 / math.sqrt(n * math.log(n)))


def cluster_size_threshold(n: int) -> float:
    return 4.0 * math.sqrt(n * math.log(max(n, 2)))


def _assign(graph: Graph, landmark_set) -> LandmarkAssignment:
    landmarks = np.array(sorted(landmark_set), dtype=np.int64)
    best_dist = np.full(graph.n, np.iinfo(np.int32).max, dtype=np.int64)
    nearest = np.full(graph.n, -1, dtype=np.int64)
    ports_toward = {}
    for a in landmarks:  # ascending id: ties keep the smaller landmark
        a = int(a)
        dist = bfs_distances(graph, a)
        ports_toward[a] = min_port_parents(graph, dist)
        better = dist < best_dist
        best_dist[better] = dist[better]
        nearest[better] = a
    return LandmarkAssignment(landmarks, nearest.astype(np.int32),
                              best_dist.astype(np.int32), ports_toward)


def compute_clusters(graph: Graph, assignment: LandmarkAssignment,
                     with_ports: bool = True) -> ClusterMap:
    """Exact clusters via one truncated BFS per node.

    Node w joins C(v) for every v with d(w,v) < d(w, L(w)); the truncated
    BFS from w to radius d(w,L(w))-1 finds exactly those v, and its
    distances give the deterministic min-port next hop at v toward w.
    """
    n = graph.n
    members: list[list[int]] = [[] for _ in range(n)]
    ports: list[list[int]] = [[] for _ in range(n)] if with_ports else None
    for w in range(n):
        radius = int(assignment.dist_to_landmark[w]) - 1
        if radius < 0:
            continue
        dist = bfs_distances(graph, w, radius=radius)
        inside = np.nonzero(dist > 0)[0]
        if inside.size == 0:
            continue
        if with_ports:
            pp = min_port_parents(graph, dist)
            for v in inside:
                members[v].append(w)
                ports[v].append(int(pp[v]))
        else:
            for v in inside:
                members[v].append(w)
    return ClusterMap(members, ports)


def select_landmarks(graph: Graph, mode: str, seed: int,
                     explicit=None) -> LandmarkAssignment:
    """Pick the landmark set; see LandmarkConfig for the modes."""
    n = graph.n
    if mode == "explicit":
        if not explicit:
            raise BuildError("landmark selection: explicit mode needs a set")
        bad = [a for a in explicit if not 0 <= a < n]
        if bad:
            raise BuildError(f"landmark selection: ids {bad} not in graph")
        return _assign(graph, set(int(a) for a in explicit))
    if mode == "cowen_dominating":
        return _assign(graph, _greedy_dominating_set(graph))
    if mode != "tz_random":
        raise BuildError(f"landmark selection: unknown mode {mode!r}")
    rng = random.Random(seed)
    p = _sample_probability(n)
    chosen = {v for v in range(n) if rng.random() < p}
    if not chosen:
        degrees = graph.degrees
        chosen = {int(np.lexsort((np.arange(n), -degrees))[0])}
    threshold = cluster_size_threshold(n)
    for round_no in range(PROMOTION_ROUNDS_CAP):
        assignment = _assign(graph, chosen)
        clusters = compute_clusters(graph, assignment, with_ports=False)
        oversized = [v for v in range(n) if len(clusters.members[v]) > threshold]
        if not oversized:
            assignment.rounds = round_no + 1
            return assignment
        chosen.update(oversized)
    raise BuildError(f"landmark selection: promotion did not converge in "
                     f"{PROMOTION_ROUNDS_CAP} rounds")


def _greedy_dominating_set(graph: Graph) -> set:
    """Greedy dominating set over closed 1-neighborhoods (lazy heap)."""
    n = graph.n
    covered = np.zeros(n, dtype=bool)
    heap = [(-(graph.degree(v) + 1), v) for v in range(n)]
    heapq.heapify(heap)
    chosen: set[int] = set()
    remaining = n
    while remaining > 0:
        gain, v = heapq.heappop(heap)
        fresh = int(not covered[v]) + int(np.count_nonzero(~covered[graph.neighbors(v)]))
        if fresh == 0:
            continue
        if fresh < -gain:  # stale priority: reinsert with the true gain
            heapq.heappush(heap, (-fresh, v))
            continue
        chosen.add(v)
        if not covered[v]:
            covered[v] = True
            remaining -= 1
        nbrs = graph.neighbors(v)
        newly = nbrs[~covered[nbrs]]
        covered[newly] = True
        remaining -= len(newly)
    return chosen


class LandmarkTable(RoutingTable):
    __slots__ = ("owner", "keys", "ports", "landmark_count", "cluster_count")

    def __init__(self, owner, keys, ports, landmark_count, cluster_count):
        self.owner = owner
        self.keys = keys
        self.ports = ports
        self.landmark_count = landmark_count
        self.cluster_count = cluster_count

    def port_toward(self, key: int) -> int:
        i = int(np.searchsorted(self.keys, key))
        if i < len(self.keys) and self.keys[i] == key:
            return int(self.ports[i])
        return -1

    def entry_count(self) -> int:
        return len(self.keys)


def landmark_build_from(graph: Graph, assignment: LandmarkAssignment,
                        clusters: ClusterMap, scheme: str):
    """Assemble tables and labels from a landmark assignment and clusters."""
    n = graph.n
    landmark_list = [int(a) for a in assignment.landmarks]
    landmark_set = set(landmark_list)
    # label port: first hop at L(v) toward v on L(v)'s BFS-tie-broken SPT
    first_hop_port = np.full(n, -1, dtype=np.int32)
    for a in landmark_list:
        spt = shortest_path_tree(graph, a)
        owned = np.nonzero(assignment.nearest == a)[0]
        for v in owned:
            v = int(v)
            if v == a:
                continue
            node = v
            while int(spt.parent[node]) != a:
                node = int(spt.parent[node])
            first_hop_port[v] = graph.port_to(a, node)
    tables = []
    labels = []
    key_bits = SizeContext.for_graph(graph).key_bits
    port_bits = SizeContext.for_graph(graph).port_bits
    for v in range(n):
        entries = {}
        for a in landmark_list:
            if a != v:
                entries[a] = int(assignment.ports_toward[a][v])
        for w, port in zip(clusters.members[v], clusters.ports[v]):
            if w != v and w not in landmark_set:
                entries[w] = port
        keys = np.array(sorted(entries), dtype=np.int64)
        ports = np.array([entries[int(k)] for k in keys], dtype=np.int32)
        if (ports < 0).any():
            raise BuildError(f"landmark build: missing next hop at node {v}")
        tables.append(LandmarkTable(v, keys, ports, len(landmark_list),
                                    len(clusters.members[v])))
        lv = int(assignment.nearest[v])
        labels.append(NodeLabel(scheme, (v, lv, int(first_hop_port[v])),
                                2 * key_bits + port_bits))
    # every node must be able to head toward any destination's landmark
    for v in range(n):
        expected = len(landmark_list) - (1 if v in landmark_set else 0)
        if tables[v].entry_count() < expected:
            raise BuildError(f"landmark build: node {v} lacks landmark routes")
    meta = {"landmarks": landmark_list,
            "selection_rounds": assignment.rounds,
            "max_cluster": max((len(m) for m in clusters.members), default=0)}
    return finish_artifacts(scheme, graph, tables, labels, {}, meta)


def landmark_build(config, graph: Graph, seed: int):
    explicit = tuple(config.landmarks) if config.mode == "explicit" else None
    assignment = select_landmarks(graph, config.mode, seed, explicit)
    clusters = compute_clusters(graph, assignment)
    return landmark_build_from(graph, assignment, clusters, config.scheme)


def landmark_header(artifacts, dst: int) -> PacketHeader:
    return PacketHeader(dst, artifacts.labels[dst], artifacts.hop_budget)


def landmark_forward(artifacts, current: int, header: PacketHeader):
    dst, landmark, landmark_port = header.label.payload
    if current == dst:
        return None
    table = artifacts.tables[current]
    port = table.port_toward(dst)
    if port >= 0:
        return port
    if current == landmark:
        if landmark_port < 0:
            raise RoutingFault(f"landmark routing: bad header port at {current}")
        return landmark_port
    port = table.port_toward(landmark)
    if port < 0:
        raise RoutingFault(f"landmark routing: node {current} has no route to "
                           f"landmark {landmark}")
    return port


register_scheme("tz", landmark_build, landmark_header, landmark_forward)
register_scheme("cowen", landmark_build, landmark_header, landmark_forward)
