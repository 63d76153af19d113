"""Checks that need a real AS-adjacency snapshot (skipped without one).

Point ROUTELAB_AS_SNAPSHOT at an edge-list file (one 'asA asB' pair per
line, '#' comments) to run these; the bundled experiments otherwise use
the synthetic stand-in, whose own contracts live in test_powerlaw_stats.
"""

import os

import pytest

import routelab as rl

SNAPSHOT = os.environ.get("ROUTELAB_AS_SNAPSHOT")

pytestmark = pytest.mark.skipif(
    not SNAPSHOT, reason="set ROUTELAB_AS_SNAPSHOT to an AS edge-list file")


@pytest.fixture(scope="module")
def as_graph():
    with open(SNAPSHOT, "rb") as f:
        g = rl.parse_edge_list(f)
    return rl.largest_connected_component(g)[0]


def test_snapshot_average_distance_band(as_graph):
    total = 0.0
    count = 0
    for s in range(0, as_graph.n, max(1, as_graph.n // 300)):
        d = rl.bfs_distances(as_graph, s)
        total += float(d[d > 0].sum())
        count += int((d > 0).sum())
    assert 2.8 <= total / count <= 4.2


def test_snapshot_tz_bands(as_graph):
    art = rl.build(rl.LandmarkConfig(), as_graph, seed=1)
    rep = rl.evaluate(art, as_graph,
                      rl.PairSampler("uniform_random", 100000, seed=3))
    assert rep.delivery_rate == 1.0
    assert 1.00 <= rep.avg_stretch <= 1.25
    assert 30 <= rep.entries_mean <= 150
