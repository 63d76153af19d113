#!/usr/bin/env python3
"""Name-independent routing: flat ids resolved to locators in-network.

Locator-style addresses encode topology; flat identifiers do not, so a
packet addressed by id alone must first find a node that knows the
destination's locator.  Identifiers hash to ~sqrt(n) colors, each node
stores the dictionary for its own color plus routes to its vicinity
ball, and the resolution detour is part of every measured route.  The
cost is dramatic: tables grow by an order of magnitude and stretch
climbs, which is the core scaling argument against locator-identifier
split designs.
"""

import routelab as rl

g = rl.gen_power_law(3000, 2, seed=1)
art = rl.build(rl.NIConfig(underlay="hybrid"), g, seed=1)
m = art.meta
print(f"{m['color_count']} colors; ball size {m['ball_size']} after "
      f"{m['escalations']} coverage escalations (factor {m['ball_factor_final']})")

under = m["underlay"]
rep_n = rl.evaluate(art, g, rl.PairSampler("uniform_random", 10000, seed=2))
rep_u = rl.evaluate(under, g, rl.PairSampler("uniform_random", 10000, seed=2))
print(f"underlay (hybrid): stretch {rep_u.avg_stretch:.3f}, "
      f"mean entries {rep_u.entries_mean:.1f}")
print(f"name-independent:  stretch {rep_n.avg_stretch:.3f}, "
      f"mean entries {rep_n.entries_mean:.1f} "
      f"({rep_n.entries_mean / rep_u.entries_mean:.0f}x)")

print("\n== watching one packet resolve ==")
s, t = 7, 2222
k = m["color_count"]
print(f"color(dst={t}) = {rl.color_of(t, k)}; color(src={s}) = {rl.color_of(s, k)}")
header = rl.make_header(art, t)
print(f"header carries only the flat id: label = {header.label}")
cur, path = s, [s]
while "under" not in header.scratch:
    step = rl.forward(art, cur, header)
    if step is None:
        break
    cur = g.neighbor_at(cur, step)
    path.append(cur)
print(f"resolver leg: {path} (resolver color matches the destination)")
r = rl.route(art, g, s, t)
print(f"full route: {r.hops} hops vs shortest {r.shortest} "
      f"(stretch {r.stretch:.2f}); the detour is charged to the route")

total = sum(len(t_.dictionary) for t_ in art.tables)
print(f"\ndictionary copies across all nodes: {total} "
      f"(every node stores its whole color class)")
