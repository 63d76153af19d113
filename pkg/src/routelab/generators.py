"""Deterministic topology generators.

Every generator is a pure function of its parameters and seed: identical
inputs give identical edge sets.  Node tokens are the decimal node ids.
"""

from __future__ import annotations

import itertools
import random

import numpy as np

from .graphs import Graph, GraphError


def _names(n: int) -> list[str]:
    return [str(i) for i in range(n)]


def gen_power_law(n: int, m: int, seed: int, p_tri: float = 0.5) -> Graph:
    """Preferential attachment with a triangle-closure step.

    Each new node attaches m edges preferentially (degree-proportional),
    then with probability p_tri closes one triangle among its new
    neighbors, giving heavy-tailed degrees together with nonzero
    clustering.  The result is connected.
    """
    if m < 1 or n < m + 1:
        raise GraphError(f"need n >= m+1 >= 2, got n={n}, m={m}")
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    adj: list[set[int]] = [set() for _ in range(n)]

    def add_edge(u, v):
        edges.append((u, v))
        adj[u].add(v)
        adj[v].add(u)
        repeated.append(u)
        repeated.append(v)

    # degree-proportional sampling pool: each node appears deg(node) times
    repeated: list[int] = []
    for u, v in itertools.combinations(range(m + 1), 2):
        add_edge(u, v)
    for v in range(m + 1, n):
        targets: set[int] = set()
        while len(targets) < min(m, v):
            t = rng.choice(repeated)
            if t != v:
                targets.add(t)
        new_nbrs = sorted(targets)
        for t in new_nbrs:
            add_edge(v, t)
        if rng.random() < p_tri:
            anchor = rng.choice(new_nbrs)
            candidates = sorted(adj[anchor] - adj[v] - {v})
            if candidates:
                add_edge(v, rng.choice(candidates))
    return Graph.from_edges(n, edges, _names(n))


def gen_grid(dims) -> Graph:
    """Axis-aligned grid (no wraparound) over the given dimension sizes."""
    dims = [int(d) for d in dims]
    if not dims or any(d <= 0 for d in dims):
        raise GraphError(f"grid dims must be positive, got {dims}")
    n = 1
    for d in dims:
        n *= d
    strides = [1] * len(dims)
    for i in range(len(dims) - 2, -1, -1):
        strides[i] = strides[i + 1] * dims[i + 1]
    edges = []
    for idx in range(n):
        rem = idx
        coord = []
        for s in strides:
            coord.append(rem // s)
            rem %= s
        for axis, d in enumerate(dims):
            if coord[axis] + 1 < d:
                edges.append((idx, idx + strides[axis]))
    return Graph.from_edges(n, edges, _names(n))


def grid_coordinates(dims) -> np.ndarray:
    """Per-node coordinates matching gen_grid's node numbering."""
    dims = [int(d) for d in dims]
    n = 1
    for d in dims:
        n *= d
    coords = np.zeros((n, len(dims)), dtype=np.int32)
    strides = [1] * len(dims)
    for i in range(len(dims) - 2, -1, -1):
        strides[i] = strides[i + 1] * dims[i + 1]
    idx = np.arange(n)
    for axis, s in enumerate(strides):
        coords[:, axis] = (idx // s) % dims[axis]
    return coords


def gen_tree(n: int, max_arity: int, seed: int) -> Graph:
    """Random tree: each node picks a uniform parent with arity room."""
    if n <= 0:
        raise GraphError("tree size must be positive")
    if n > 1 and max_arity < 1:
        raise GraphError("max_arity must be at least 1")
    rng = random.Random(seed)
    child_count = [0] * n
    eligible = [0]
    edges = []
    for v in range(1, n):
        i = rng.randrange(len(eligible))
        parent = eligible[i]
        edges.append((parent, v))
        child_count[parent] += 1
        if child_count[parent] >= max_arity:
            eligible[i] = eligible[-1]
            eligible.pop()
        eligible.append(v)
    return Graph.from_edges(n, edges, _names(n))


def gen_star(n: int) -> Graph:
    """Star: node 0 is the center, nodes 1..n-1 are leaves."""
    if n <= 0:
        raise GraphError("star size must be positive")
    return Graph.from_edges(n, [(0, v) for v in range(1, n)], _names(n))


def gen_full_mesh(n: int) -> Graph:
    """Complete graph K_n."""
    if n <= 0:
        raise GraphError("mesh size must be positive")
    return Graph.from_edges(n, itertools.combinations(range(n), 2), _names(n))


def gen_er(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p); may be disconnected (callers take the LCC)."""
    if n <= 0:
        raise GraphError("graph size must be positive")
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability must be in [0,1], got {p}")
    rng = random.Random(seed)
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2)
             if rng.random() < p]
    return Graph.from_edges(n, edges, _names(n))


GENERATORS = {
    "power-law": gen_power_law,
    "grid": gen_grid,
    "tree": gen_tree,
    "star": gen_star,
    "full-mesh": gen_full_mesh,
    "er": gen_er,
}
