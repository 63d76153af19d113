"""Name-independent routing: colors, balls, dictionaries, combined stretch."""

import math

import numpy as np
import pytest

import routelab as rl
from routelab.dictrouting import ball_target


def test_hash_is_fixed():
    # splitmix64 with the documented constants; these values pin the layout
    assert rl.mix64(0) == 16294208416658607535
    assert rl.mix64(1) == 10451216379200822465
    assert rl.color_of(0, 7) == rl.mix64(0) % 7


def test_color_count_and_balance():
    n = 4096
    k = rl.color_count(n)
    assert k == 64
    counts = np.bincount([rl.color_of(v, k) for v in range(n)], minlength=k)
    assert counts.max() <= 3 * n / k


def test_k8_resolution_is_local():
    g = rl.gen_full_mesh(8)
    art = rl.build(rl.NIConfig(underlay="tz"), g, 1)
    under = art.meta["underlay"]
    for s in range(8):
        for t in range(8):
            if s == t:
                continue
            r = rl.route(art, g, s, t)
            assert r.delivered
            # every ball member sits one hop away: the resolver detour is
            # at most one hop each way on a complete graph
            assert r.hops <= 2 + rl.route(under, g, s, t).hops


def test_star_tables_at_least_sqrt_n():
    g = rl.gen_star(100)
    art = rl.build(rl.NIConfig(underlay="tz"), g, 0)
    worst = max(rl.table_size(art, v)[0] for v in range(g.n))
    assert worst >= math.isqrt(100)


def test_dictionary_totals_match_placement_rule():
    # every node stores the full mapping of its own color class, so the
    # grand total is the sum of squared class sizes
    g = rl.gen_power_law(200, 2, seed=4)
    art = rl.build(rl.NIConfig(underlay="tz"), g, 4)
    k = art.meta["color_count"]
    colors = np.array([rl.color_of(v, k) for v in range(g.n)])
    class_sizes = np.bincount(colors, minlength=k)
    total = sum(len(t.dictionary) for t in art.tables)
    assert total == int((class_sizes ** 2).sum())
    assert art.meta["dictionary_entries_total"] == g.n


def test_ni_hops_dominate_underlay_pointwise_when_underlay_exact():
    # the resolution detour can only add hops when the underlay is
    # distance-exact; with the hybrid underlay that is every tree graph
    # (the tree-cover side routes trees at stretch 1)
    for g in (rl.gen_star(60), rl.gen_tree(80, 3, seed=1)):
        art = rl.build(rl.NIConfig(underlay="hybrid"), g, 7)
        under = art.meta["underlay"]
        for s in range(0, g.n, 5):
            for t in range(0, g.n, 3):
                if s == t:
                    continue
                rn = rl.route(art, g, s, t)
                ru = rl.route(under, g, s, t)
                assert rn.delivered and ru.delivered
                assert ru.hops == ru.shortest
                assert rn.hops >= ru.hops


def test_ni_average_dominates_underlay():
    # on general graphs the resolver detour may shortcut an individual
    # stretched underlay route, but the averages keep the ordering
    g = rl.gen_power_law(150, 2, seed=7)
    art = rl.build(rl.NIConfig(underlay="tz"), g, 7)
    under = art.meta["underlay"]
    ni_total = under_total = 0
    for s in range(0, g.n, 7):
        for t in range(0, g.n, 5):
            if s == t:
                continue
            ni_total += rl.route(art, g, s, t).hops
            under_total += rl.route(under, g, s, t).hops
    assert ni_total >= under_total


def test_resolution_writes_true_locator():
    g = rl.gen_power_law(120, 2, seed=9)
    art = rl.build(rl.NIConfig(underlay="tz"), g, 9)
    under = art.meta["underlay"]
    for s, t in [(0, 100), (55, 3), (119, 60), (17, 18)]:
        header = rl.make_header(art, t)
        cur = s
        hops = 0
        while "under" not in header.scratch:
            step = rl.forward(art, cur, header)
            if step is None:
                break  # the destination resolved its own id while delivering
            cur = g.neighbor_at(cur, step)
            hops += 1
            assert hops < art.hop_budget
        assert header.scratch["under"].label is under.labels[t]


def test_coverage_after_build():
    g = rl.gen_power_law(250, 2, seed=5)
    art = rl.build(rl.NIConfig(underlay="tz"), g, 5)
    k = art.meta["color_count"]
    colors = np.array([rl.color_of(v, k) for v in range(g.n)])
    present = set(np.unique(colors).tolist())
    for t in art.tables:
        have = {c for c in range(k) if t.reps[c] >= 0}
        assert present <= have


def test_ball_escalation_grows_factor():
    g = rl.gen_star(64)  # leaves see few distinct colors in small balls
    art = rl.build(rl.NIConfig(underlay="tz", ball_factor=0.25), g, 0)
    assert art.meta["ball_factor_final"] >= 0.25
    assert art.meta["escalations"] <= 4


def test_p3_resolution_detour_accounting():
    # pinned hash: on P3 the total hop count decomposes into the resolver
    # leg plus the underlay route from the resolver
    g = rl.parse_edge_list("0 1\n1 2\n")
    art = rl.build(rl.NIConfig(underlay="tz"), g, 0)
    under = art.meta["underlay"]
    k = art.meta["color_count"]
    for s in range(3):
        for t in range(3):
            if s == t:
                continue
            r = rl.route(art, g, s, t)
            assert r.delivered
            if rl.color_of(s, k) == rl.color_of(t, k):
                expected = rl.route(under, g, s, t).hops
            else:
                table = art.tables[s]
                resolver = int(table.reps[rl.color_of(t, k)])
                d_sr = int(rl.bfs_distances(g, s)[resolver])
                expected = d_sr + rl.route(under, g, resolver, t).hops
            assert r.hops == expected


def test_ni_accounting_shape():
    g = rl.gen_power_law(80, 2, seed=2)
    art = rl.build(rl.NIConfig(underlay="bc"), g, 2)
    acc = rl.ni_accounting(art)
    assert len(acc) == g.n
    for v, (entries, bits) in enumerate(acc):
        assert (entries, bits) == rl.table_size(art, v)
        under_entries = art.tables[v].underlay_table.entry_count()
        ball = len(art.tables[v].ball_keys)
        dict_entries = len(art.tables[v].dictionary)
        assert entries == under_entries + ball + dict_entries


def test_ball_target_formula():
    assert ball_target(10000, 1.0) == math.ceil(math.sqrt(10000 * math.log(10000)))
    assert ball_target(4, 100.0) == 4  # clamped to n


def test_unknown_underlay_rejected():
    g = rl.gen_star(5)
    with pytest.raises(rl.BuildError):
        rl.build(rl.NIConfig(underlay="nope"), g, 0)


def test_ni_with_hybrid_underlay_delivers():
    g = rl.gen_power_law(100, 2, seed=3)
    art = rl.build(rl.NIConfig(underlay="hybrid"), g, 3)
    for s in range(0, g.n, 9):
        for t in range(0, g.n, 7):
            if s != t:
                assert rl.route(art, g, s, t).delivered
