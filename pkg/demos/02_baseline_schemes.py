#!/usr/bin/env python3
"""Baseline schemes: what stretch-1 routing costs, and two ways around it.

Trivial shortest-path routing keeps an entry for every destination, the
incompressible worst case.  On special topologies, addresses can carry
the location: DFS-interval labels on trees and coordinates on grids give
stretch 1 from O(1)-entry tables.  The hierarchical baseline compresses
general graphs by clustering, and pays in stretch.
"""

import routelab as rl

print("== trivial routing: stretch 1, n-1 entries per node ==")
g = rl.gen_power_law(400, 2, seed=3)
art = rl.build(rl.TrivialConfig(), g, 0)
rep = rl.evaluate(art, g, rl.PairSampler("uniform_random", 2000, seed=1))
print(f"avg stretch {rep.avg_stretch:.3f}, mean entries {rep.entries_mean:.0f} "
      f"(n-1 = {g.n - 1}), mean bits {rep.bits_mean:.0f}")

print("\n== tree routing: interval labels, 2-entry tables ==")
t = rl.gen_tree(1000, 3, seed=5)
art = rl.build(rl.TreeConfig(), t, 0)
rep = rl.evaluate(art, t, rl.PairSampler("uniform_random", 2000, seed=1))
widest = max(len(l.payload[3]) for l in art.labels)
print(f"avg stretch {rep.avg_stretch:.3f}, max entries {rep.entries_max}, "
      f"longest light-edge list {widest} (cap: floor(log2 n) = 9)")

print("\n== grid routing: coordinates are the routing table ==")
dims = (10, 10, 10)
gg = rl.gen_grid(dims)
art = rl.build(rl.GridConfig(dims=dims), gg, 0)
rep = rl.evaluate(art, gg, rl.PairSampler("uniform_random", 1000, seed=1))
print(f"avg stretch {rep.avg_stretch:.3f}, max entries {rep.entries_max} "
      f"(cap 1+2*{len(dims)})")

print("\n== hierarchical clustering: small tables, real stretch ==")
art = rl.build(rl.HierConfig(cluster_target=4), g, 0)
rep = rl.evaluate(art, g, rl.PairSampler("uniform_random", 2000, seed=1))
print(f"levels: {art.meta['levels']}, clusters per level: "
      f"{art.meta['clusters_per_level']}")
print(f"avg stretch {rep.avg_stretch:.2f}, max {rep.max_stretch:.1f}, "
      f"mean entries {rep.entries_mean:.1f} vs trivial's {g.n - 1}")
print("small-world graphs have no remote nodes to aggregate away, so the")
print("detours pile up while the tables shrink")
