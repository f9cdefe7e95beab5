import numpy as np
import pytest

from steppath import build_csr, dijkstra, percentile_target
from helpers import bellman_ford, g1, random_graph


def test_g1_distances():
    g = g1()
    assert dijkstra(g, 0).tolist() == [0.0, 1.0, 3.0, 4.0]
    assert dijkstra(g, 3).tolist() == [4.0, 3.0, 1.0, 0.0]


def test_unreachable_is_inf():
    g = build_csr(3, [(0, 1, 1.0)], symmetrize=True)
    d = dijkstra(g, 0)
    assert d[2] == np.inf


def test_source_out_of_range():
    with pytest.raises(ValueError):
        dijkstra(g1(), 4)


def test_matches_bellman_ford_fixpoint():
    for seed in range(20):
        g = random_graph(80, 2.5, seed, hi=50)
        src = seed % g.n
        assert np.array_equal(dijkstra(g, src), bellman_ford(g, src))


def test_percentile_rank_formula_on_g1():
    g = g1()
    # distances from 0 are [1, 3, 4] over vertices [1, 2, 3]
    assert percentile_target(g, 0, 100) == 3
    assert percentile_target(g, 0, 34) == 2
    assert percentile_target(g, 0, 67) == 3
    assert percentile_target(g, 0, 33) == 1
    assert percentile_target(g, 0, 1) == 1


def test_percentile_tie_breaks_by_id():
    # three spokes at equal distance: the (distance, id) sort orders them 1,2,3
    g = build_csr(4, [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)], symmetrize=True)
    assert percentile_target(g, 0, 1) == 1
    assert percentile_target(g, 0, 34) == 2
    assert percentile_target(g, 0, 67) == 3
    assert percentile_target(g, 0, 100) == 3


def test_percentile_p_validation():
    g = g1()
    with pytest.raises(ValueError):
        percentile_target(g, 0, 0)
    with pytest.raises(ValueError):
        percentile_target(g, 0, 101)


def test_percentile_isolated_source():
    g = build_csr(3, [(0, 1, 1.0)], symmetrize=True)
    with pytest.raises(ValueError):
        percentile_target(g, 2, 50)


def test_percentile_accepts_precomputed_distances():
    g = g1()
    d = bellman_ford(g, 0)
    assert percentile_target(g, 0, 100, distances=d) == percentile_target(g, 0, 100)
    assert percentile_target(g, 0, 34, distances=d) == 2
