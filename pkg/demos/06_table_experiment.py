#!/usr/bin/env python3
"""The headline experiment, scaled down: four schemes on one topology.

Builds landmark, tree-cover, hybrid, and name-independent routing on an
Internet-like graph and prints the summary table (average stretch,
table entries, bits).  At full size (n=9204, 10^5 pairs) this is the
acceptance run; here n=2000 keeps it under a minute.  The CLI drives
the same pipeline and writes CSVs:

    routelab gen  --kind=power-law --n=9204 --m=2 --seed=1 --out=as.txt
    routelab eval --graph=as.txt --schemes=tz,bc,hybrid,ni \\
                  --pairs=100000 --out=results/
"""

import routelab as rl

N = 2000
g = rl.gen_power_law(N, 2, seed=1)
sampler = rl.PairSampler("uniform_random", 20000, seed=3)
print(f"synthetic Internet-like graph: {g}, max degree {g.max_degree}\n")

rows = []
for cfg in (rl.TrivialConfig(), rl.HierConfig(cluster_target=4),
            rl.LandmarkConfig(), rl.TreeCoverConfig(trees=5),
            rl.HybridConfig(), rl.NIConfig(underlay="hybrid")):
    art = rl.build(cfg, g, seed=1)
    rep = rl.evaluate(art, g, sampler)
    rows.append((cfg.scheme, rep))

print(f"{'scheme':<10} {'stretch':>8} {'max':>6} {'entries':>9} "
      f"{'bits':>9} {'neighbor':>9}")
print("-" * 56)
for name, rep in rows:
    print(f"{name:<10} {rep.avg_stretch:>8.3f} {rep.max_stretch:>6.2f} "
          f"{rep.entries_mean:>9.1f} {rep.bits_mean:>9.0f} "
          f"{rep.neighbor_direct:>9.4f}")

print("\nreading the table:")
print(" - trivial pins the stretch-1 cost: tables scale with n")
print(" - hier shrinks tables but stretch explodes on a small world")
print(" - landmark/tree-cover land near stretch 1 with tiny tables")
print(" - hybrid is their pointwise minimum for the summed table size")
print(" - name-independent pays ~10x tables and visible stretch for")
print("   topology-free addressing")
