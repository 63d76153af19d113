"""Harness behavior: sampling, aggregation, oracle equivalence, sweeps."""

import pytest

import routelab as rl
from routelab.evaluation import entries_bucket, stretch_bin


def test_sampler_all_pairs():
    pairs = rl.PairSampler("all_pairs").pairs(4)
    assert len(pairs) == 12
    assert all(s != t for s, t in pairs)
    assert len(set(pairs)) == 12


def test_sampler_uniform_no_replacement_and_exhaustion():
    pairs = rl.PairSampler("uniform_random", count=10 ** 6, seed=1).pairs(5)
    assert len(pairs) == 20  # exhausted the space
    assert len(set(pairs)) == 20
    some = rl.PairSampler("uniform_random", count=7, seed=1).pairs(30)
    assert len(some) == len(set(some)) == 7
    assert all(s != t for s, t in some)


def test_sampler_deterministic():
    a = rl.PairSampler("uniform_random", count=50, seed=9).pairs(40)
    b = rl.PairSampler("uniform_random", count=50, seed=9).pairs(40)
    assert a == b


def test_trivial_report_is_exact():
    g = rl.gen_power_law(60, 2, seed=1)
    art = rl.build(rl.TrivialConfig(), g, 0)
    rep = rl.evaluate(art, g, rl.PairSampler("all_pairs"))
    assert rep.delivery_rate == 1.0
    assert rep.avg_stretch == 1.0
    assert rep.max_stretch == 1.0
    assert rep.loop_faults == 0 and rep.routing_faults == 0
    assert rep.entries_mean == g.n - 1
    assert rep.neighbor_direct == 1.0
    assert rep.pair_count == g.n * (g.n - 1)


def test_histograms_sum_to_counts():
    g = rl.gen_power_law(80, 2, seed=2)
    art = rl.build(rl.LandmarkConfig(), g, 2)
    rep = rl.evaluate(art, g, rl.PairSampler("uniform_random", 500, seed=3))
    assert sum(rep.stretch_hist.values()) == rep.delivered
    assert sum(rep.entries_hist.values()) == g.n
    assert rep.delivered == rep.pair_count  # full delivery on this suite


def test_stretch_bins_width():
    assert stretch_bin(1.0) == 0
    assert stretch_bin(1.049) == 0
    assert stretch_bin(1.05) == 1
    assert stretch_bin(2.0) == 20
    assert entries_bucket(0) == 0
    assert entries_bucket(1) == 1
    assert entries_bucket(2) == 2
    assert entries_bucket(3) == 2
    assert entries_bucket(8) == 4


def test_avg_distance_reported():
    g = rl.gen_grid([5, 5])
    art = rl.build(rl.TrivialConfig(), g, 0)
    rep = rl.evaluate(art, g, rl.PairSampler("all_pairs"))
    d = rl.bfs_distances(g, 0)
    # exact all-pairs mean distance on the 5x5 grid
    total = sum(int(rl.bfs_distances(g, s).sum()) for s in range(25))
    assert rep.avg_distance == pytest.approx(total / (25 * 24))


def test_threads_do_not_change_results():
    g = rl.gen_power_law(70, 2, seed=4)
    art = rl.build(rl.LandmarkConfig(), g, 4)
    s1 = rl.evaluate(art, g, rl.PairSampler("uniform_random", 300, seed=5),
                     threads=1)
    s2 = rl.evaluate(art, g, rl.PairSampler("uniform_random", 300, seed=5),
                     threads=2)
    assert s1.avg_stretch == s2.avg_stretch
    assert s1.stretch_hist == s2.stretch_hist
    assert s1.delivered == s2.delivered


def test_neighbor_check_trivial_and_tree():
    g = rl.gen_power_law(60, 2, seed=6)
    art = rl.build(rl.TrivialConfig(), g, 0)
    frac, violations = rl.neighbor_check(art, g)
    assert frac == 1.0 and violations == 0
    gt = rl.gen_tree(60, 3, seed=6)
    art = rl.build(rl.TreeConfig(), gt, 0)
    assert rl.neighbor_check(art, gt)[0] == 1.0


def test_neighbor_check_k32_single_landmark():
    g = rl.gen_full_mesh(32)
    art = rl.build(rl.LandmarkConfig(mode="explicit", landmarks=(0,)), g, 0)
    frac, violations = rl.neighbor_check(art, g)
    assert frac < 1.0
    assert violations > 0


NAIVE_CONFIGS = [
    rl.TrivialConfig(),
    rl.HierConfig(cluster_target=4),
    rl.LandmarkConfig(),
    rl.LandmarkConfig(scheme="cowen", mode="cowen_dominating"),
    rl.TreeCoverConfig(trees=2),
    rl.HybridConfig(),
    rl.NIConfig(underlay="tz"),
]


@pytest.mark.parametrize("config", NAIVE_CONFIGS, ids=lambda c: c.scheme)
def test_oracle_equivalence_naive_simulator(config):
    for seed in (0, 3):
        g = rl.largest_connected_component(rl.gen_er(40, 0.12, seed=seed))[0]
        art = rl.build(config, g, seed)
        for s in range(g.n):
            for t in range(g.n):
                if s == t:
                    continue
                fast = rl.route(art, g, s, t)
                slow = rl.naive_route(art, g, s, t)
                assert fast.delivered and slow.delivered
                assert fast.path == slow.path
                assert fast.shortest == slow.shortest


def test_scaling_sweep_trivial_exact():
    rows = rl.scaling_sweep(rl.TrivialConfig(),
                            lambda n, seed: rl.gen_power_law(n, 2, seed),
                            sizes=[100, 200], seeds=2, pairs=200)
    assert len(rows) == 4
    for row in rows:
        assert row["max_entries"] == row["n"] - 1
        assert row["delivery"] == 1.0
        assert "entries_over_sqrt_nlogn" in row and "bits_over_log2sq" in row


def test_scaling_sweep_row_count():
    rows = rl.scaling_sweep(rl.TreeCoverConfig(trees=2),
                            lambda n, seed: rl.gen_power_law(n, 2, seed),
                            sizes=[100, 150, 200], seeds=3, pairs=100)
    assert len(rows) == 9


def test_hybrid_report_dominated_by_components():
    g = rl.gen_power_law(100, 2, seed=8)
    art = rl.build(rl.HybridConfig(), g, 1)
    sub = art.meta["sub"]
    sampler = rl.PairSampler("uniform_random", 400, seed=2)
    rep_h = rl.evaluate(art, g, sampler)
    rep_t = rl.evaluate(sub["tz"], g, sampler)
    rep_b = rl.evaluate(sub["bc"], g, sampler)
    assert rep_h.avg_stretch <= min(rep_t.avg_stretch, rep_b.avg_stretch) + 1e-12
    assert rep_h.entries_mean == pytest.approx(rep_t.entries_mean
                                               + rep_b.entries_mean)
