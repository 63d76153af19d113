"""Tree routing on DFS intervals with heavy-path light-edge lists.

Nodes are numbered in DFS preorder (children visited in ascending id
order), so a subtree is the contiguous interval [pre, pre+size-1].  A node
keeps O(1) state: its own interval, the upward port, and its heavy child's
interval and port.  A destination label carries, for every light edge on
the root-to-node path, the departing ancestor's interval, depth and port;
heavy-path decomposition bounds that list by floor(log2 n) entries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import Graph, Tree
from .routing import RoutingFault

# a label is (pre, post, depth, lights) where lights is a tuple of
# (ancestor_pre, ancestor_post, ancestor_depth, departing_port)


@dataclass
class TreeRouting:
    """Per-node routing state for one rooted spanning tree."""

    root: int
    pre: np.ndarray
    post: np.ndarray
    depth: np.ndarray
    parent_port: np.ndarray
    heavy_child: np.ndarray
    heavy_port: np.ndarray
    lights: list[tuple]

    def label_fields(self, v: int) -> tuple:
        return (int(self.pre[v]), int(self.post[v]), int(self.depth[v]),
                self.lights[v])

    def max_light_len(self) -> int:
        return max((len(t) for t in self.lights), default=0)


def build_tree_routing(graph: Graph, tree: Tree) -> TreeRouting:
    """Intervals, heavy children and light-edge lists for a spanning tree."""
    n = graph.n
    depth = tree.depth
    # subtree sizes bottom-up (deepest first)
    size = np.ones(n, dtype=np.int64)
    order = np.argsort(depth, kind="stable")[::-1]
    parent = tree.parent
    for v in order:
        p = parent[v]
        if p >= 0:
            size[p] += size[v]
    # heavy child: largest subtree, ties to the smaller id (children are
    # stored ascending, strict > keeps the first maximum)
    heavy_child = np.full(n, -1, dtype=np.int32)
    for u in range(n):
        best = -1
        best_size = 0
        for c in tree.children[u]:
            if size[c] > best_size:
                best = c
                best_size = int(size[c])
        heavy_child[u] = best
    # DFS preorder, children ascending; subtree is [pre, pre+size-1]
    pre = np.full(n, -1, dtype=np.int64)
    counter = 0
    stack = [tree.root]
    while stack:
        u = stack.pop()
        pre[u] = counter
        counter += 1
        stack.extend(reversed(tree.children[u]))
    post = pre + size - 1
    heavy_port = np.full(n, -1, dtype=np.int32)
    lights: list[tuple] = [()] * n
    # walk in preorder so each parent's list is final before its children
    preorder = np.argsort(pre, kind="stable")
    preorder = preorder[pre[preorder] >= 0]
    for u in preorder:
        u = int(u)
        hc = int(heavy_child[u])
        base = lights[u]
        entry_head = (int(pre[u]), int(post[u]), int(depth[u]))
        for c in tree.children[u]:
            port = graph.port_to(u, c)
            if c == hc:
                heavy_port[u] = port
                lights[c] = base
            else:
                lights[c] = base + (entry_head + (port,),)
    return TreeRouting(tree.root, pre, post, depth.copy(), tree.parent_port,
                       heavy_child, heavy_port, lights)


def tree_step(tr: TreeRouting, u: int, dst_fields: tuple):
    """One forwarding decision within a tree; None delivers."""
    tpre = dst_fields[0]
    upre = tr.pre[u]
    if tpre == upre:
        return None
    if tpre < upre or tpre > tr.post[u]:
        p = int(tr.parent_port[u])
        if p < 0:
            raise RoutingFault(f"tree routing: {u} is the root but "
                               f"destination interval is outside its subtree")
        return p
    hc = int(tr.heavy_child[u])
    if hc >= 0 and tr.pre[hc] <= tpre <= tr.post[hc]:
        return int(tr.heavy_port[u])
    for apre, _apost, _adep, port in dst_fields[3]:
        if apre == upre:
            return int(port)
    raise RoutingFault(f"tree routing: no light entry for node {u}")


def tree_distance(a_fields: tuple, b_fields: tuple) -> int:
    """Exact tree distance between two nodes from their labels alone.

    The LCA is either one of the endpoints or a light-edge ancestor of one
    of them (at the divergence node at most one side can continue on the
    heavy edge), so its depth is the deepest label-carried ancestor whose
    interval contains both endpoints.
    """
    apre, apost, adep = a_fields[0], a_fields[1], a_fields[2]
    bpre, bpost, bdep = b_fields[0], b_fields[1], b_fields[2]
    if apre <= bpre <= apost:
        lca = adep
    elif bpre <= apre <= bpost:
        lca = bdep
    else:
        lca = 0
        for ppre, ppost, pdep, _port in a_fields[3]:
            if pdep > lca and ppre <= bpre <= ppost:
                lca = pdep
        for ppre, ppost, pdep, _port in b_fields[3]:
            if pdep > lca and ppre <= apre <= ppost:
                lca = pdep
    return adep + bdep - 2 * lca


def tree_label_bits(fields: tuple, key_bits: int, port_bits: int) -> int:
    """Declared encoding: interval + depth, plus per light entry the
    ancestor interval, depth and port."""
    return 3 * key_bits + len(fields[3]) * (3 * key_bits + port_bits)
