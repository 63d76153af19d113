#!/usr/bin/env python3
"""Graphs, ports, and shortest-path machinery.

Every routing scheme in this package runs on the same immutable graph
type: dense integer ids, neighbors sorted ascending, and the port index
of a neighbor is simply its position in that sorted list.  This script
walks through parsing, generation, BFS, and component extraction.
"""

import routelab as rl

print("== parsing an edge list (AS-adjacency style) ==")
text = """\
# comment lines and duplicates are handled at parse time
701 1239
1239 3356
3356 701
3356 701
7018 7018
7018 701
"""
g = rl.parse_edge_list(text)
print(f"graph: {g}, tokens: {g.names}")
print(f"node 0 ('{g.names[0]}') neighbors: {g.neighbors(0).tolist()}")
print(f"port from '701' to '3356': {g.port_to(0, g.names.index('3356'))}")

print("\n== generators are deterministic per seed ==")
pl = rl.gen_power_law(2000, 2, seed=42)
again = rl.gen_power_law(2000, 2, seed=42)
print(f"power-law graph: {pl}, max degree {pl.max_degree}")
print(f"same seed, same edge hash: {pl.hash_hex() == again.hash_hex()}")
print(f"grid 4x3: {rl.gen_grid([4, 3])}")
print(f"random tree: {rl.gen_tree(50, 3, seed=7)}")

print("\n== BFS distances and deterministic parent ports ==")
dv = rl.bfs(pl, 0)
print(f"distances from node 0: min 0, max {dv.dist.max()}")
print(f"node 100 reaches node 0 via port {dv.parent_port[100]} "
      f"(neighbor {dv.parent(pl, 100)})")

tree = rl.shortest_path_tree(pl, 0)
print(f"SPT at 0: depth equals BFS distance everywhere: "
      f"{(tree.depth == dv.dist).all()}")

print("\n== largest connected component ==")
broken = rl.Graph.from_edges(7, [(0, 1), (1, 2), (3, 4), (4, 5), (5, 6), (6, 3)])
sub, orig = rl.largest_connected_component(broken)
print(f"kept {sub.n} of {broken.n} nodes; original ids {orig.tolist()}")
