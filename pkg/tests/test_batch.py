import itertools

import numpy as np
import pytest

import steppath as sp
from steppath.batch import MultiBidsSearch
from helpers import g1, random_graph, random_pairs_same_component, two_triangles


def test_query_graph_chain():
    qg = sp.build_query_graph([(1, 2), (2, 3)], 5)
    assert qg.endpoints.tolist() == [1, 2, 3]
    assert qg.edges.tolist() == [[0, 1], [1, 2]]
    assert qg.n_pairs == 2


def test_query_graph_dedup():
    qg = sp.build_query_graph([(1, 2), (2, 1), (1, 2)], 4)
    assert qg.endpoints.tolist() == [1, 2]
    assert qg.edges.tolist() == [[0, 1]]
    assert qg.n_pairs == 3
    assert qg.pair_edge.tolist() == [0, 0, 0]


def test_query_graph_self_pair():
    qg = sp.build_query_graph([(5, 5)], 6)
    assert qg.endpoints.tolist() == [5]
    assert len(qg.edges) == 0
    assert qg.pair_edge.tolist() == [-1]


def test_query_graph_endpoint_validation():
    with pytest.raises(ValueError):
        sp.build_query_graph([(0, 9)], 4)


def test_multi_bids_star_on_g1():
    g = g1()
    ans = sp.multi_bids(g, sp.build_query_graph([(0, 3), (0, 2)], g.n))
    assert ans.distances.tolist() == [4.0, 3.0]
    assert ans.runs == 1


def test_multi_bids_chain_on_g1():
    g = g1()
    ans = sp.multi_bids(g, sp.build_query_graph([(0, 1), (1, 2), (2, 3)], g.n))
    assert ans.distances.tolist() == [1.0, 2.0, 1.0]


def test_multi_bids_self_pair_answers_zero():
    g = g1()
    ans = sp.multi_bids(g, sp.build_query_graph([(2, 2)], g.n))
    assert ans.distances.tolist() == [0.0]
    assert ans.runs == 0


def test_multi_bids_disconnected_pair():
    g = two_triangles()
    ans = sp.multi_bids(g, sp.build_query_graph([(0, 4), (0, 2)], g.n))
    assert ans.distances.tolist() == [np.inf, 1.0]


def test_multi_bids_duplicate_pairs_share_edge():
    g = g1()
    ans = sp.multi_bids(g, sp.build_query_graph([(0, 3), (3, 0), (0, 3)], g.n))
    assert ans.distances.tolist() == [4.0, 4.0, 4.0]


def test_multi_bids_cell_budget():
    g = g1()
    with pytest.raises(sp.BatchTooLarge):
        sp.multi_bids(g, sp.build_query_graph([(0, 1), (1, 2), (2, 3)], g.n), cell_cap=8)


def test_multi_bids_allocates_one_cell_per_vertex_copy():
    g = g1()
    qg = sp.build_query_graph([(0, 1), (2, 3)], g.n)
    search = MultiBidsSearch(g, qg)
    assert search.state.values.size == g.n * qg.order


def test_search_radius_stays_above_true_distances():
    g = random_graph(200, 3, 4)
    pairs = random_pairs_same_component(g, 6, 9)
    qg = sp.build_query_graph(pairs, g.n)
    ans = sp.multi_bids(g, qg)
    radius = ans.extras["radius"]
    edge_d = ans.extras["edge_distances"]
    for i in range(qg.order):
        incident = qg.incident_edges(i)
        if incident.size:
            assert radius[i] >= edge_d[incident].max()


def test_exact_cover_star():
    qg = sp.build_query_graph([(4, 0), (4, 1), (4, 2), (4, 3), (4, 5)], 6)
    center = int(np.flatnonzero(qg.endpoints == 4)[0])
    assert sp.exact_vertex_cover(qg).tolist() == [center]


def test_exact_cover_chain():
    qg = sp.build_query_graph([(0, 1), (1, 2), (2, 3)], 4)
    # both {0,2} and {1,2} have size 2; the lexicographic rule picks {0,2}
    assert sp.exact_vertex_cover(qg).tolist() == [0, 2]


def test_exact_cover_k4():
    pairs = list(itertools.combinations(range(4), 2))
    qg = sp.build_query_graph(pairs, 4)
    cover = sp.exact_vertex_cover(qg)
    assert len(cover) == 3
    assert cover.tolist() == [0, 1, 2]


def test_exact_cover_size_limit():
    pairs = [(i, i + 1) for i in range(24)]
    qg = sp.build_query_graph(pairs, 30)
    with pytest.raises(ValueError):
        sp.exact_vertex_cover(qg)


def _covers(qg, cover):
    got = set(cover.tolist())
    return all(a in got or b in got for a, b in qg.edges.tolist())


def _brute_min_cover_size(qg):
    k = len(qg.edges)
    for size in range(qg.order + 1):
        for subset in itertools.combinations(range(qg.order), size):
            chosen = set(subset)
            if all(a in chosen or b in chosen for a, b in qg.edges.tolist()):
                return size
    raise AssertionError("unreachable")


def test_exact_cover_matches_brute_force():
    rng = np.random.default_rng(0)
    for trial in range(25):
        order = int(rng.integers(2, 9))
        count = int(rng.integers(1, 10))
        pairs = rng.integers(0, order, (count, 2))
        pairs = pairs[pairs[:, 0] != pairs[:, 1]]
        if len(pairs) == 0:
            continue
        qg = sp.build_query_graph(pairs, order)
        cover = sp.exact_vertex_cover(qg)
        assert _covers(qg, cover)
        assert len(cover) == _brute_min_cover_size(qg)


def test_greedy_cover_star_and_single_edge():
    star = sp.build_query_graph([(4, 0), (4, 1), (4, 2)], 5)
    center = int(np.flatnonzero(star.endpoints == 4)[0])
    assert sp.greedy_vertex_cover(star).tolist() == [center]
    one = sp.build_query_graph([(2, 7)], 8)
    assert sp.greedy_vertex_cover(one).tolist() == [0]  # the smaller endpoint


def test_greedy_cover_k4():
    pairs = list(itertools.combinations(range(4), 2))
    qg = sp.build_query_graph(pairs, 4)
    cover = sp.greedy_vertex_cover(qg)
    assert _covers(qg, cover)
    assert len(cover) <= 3


def test_greedy_cover_always_covers():
    rng = np.random.default_rng(5)
    for trial in range(20):
        order = int(rng.integers(2, 12))
        pairs = rng.integers(0, order, (int(rng.integers(1, 14)), 2))
        pairs = pairs[pairs[:, 0] != pairs[:, 1]]
        if len(pairs) == 0:
            continue
        qg = sp.build_query_graph(pairs, order)
        assert _covers(qg, sp.greedy_vertex_cover(qg))


def test_vc_sssp_star_on_g1():
    g = g1()
    ans = sp.vc_sssp_batch(g, sp.build_query_graph([(0, 3), (0, 2)], g.n))
    assert ans.runs == 1
    assert ans.cover.tolist() == [0]
    assert ans.distances.tolist() == [4.0, 3.0]


def test_vc_sssp_chain_on_g1():
    g = g1()
    ans = sp.vc_sssp_batch(g, sp.build_query_graph([(0, 1), (1, 2), (2, 3)], g.n))
    assert ans.runs == 2
    assert ans.distances.tolist() == [1.0, 2.0, 1.0]


def test_vc_sssp_empty_edge_set():
    g = g1()
    ans = sp.vc_sssp_batch(g, sp.build_query_graph([(1, 1)], g.n))
    assert ans.runs == 0
    assert ans.distances.tolist() == [0.0]


def test_vc_sssp_greedy_above_limit():
    g = random_graph(60, 3, 3)
    pairs = random_pairs_same_component(g, 12, 1)
    qg = sp.build_query_graph(pairs, g.n)
    ans = sp.vc_sssp_batch(g, qg, exact_cover_limit=4)
    for (s, t), d in zip(np.asarray(pairs).tolist(), ans.distances.tolist()):
        assert d == sp.dijkstra(g, s)[t]


def test_baseline_singleton_matches_bids():
    g = g1()
    qg = sp.build_query_graph([(0, 3)], g.n)
    ans = sp.baseline_batch(g, qg, "plain-bids")
    assert ans.distances.tolist() == [4.0]
    assert ans.runs == 1


def test_baseline_plain_sssp_run_counts():
    g = g1()
    star = sp.build_query_graph([(0, 3), (0, 2)], g.n)
    assert sp.baseline_batch(g, star, "plain-sssp").runs == 1
    chain = sp.build_query_graph([(0, 1), (1, 2), (2, 3)], g.n)
    assert sp.baseline_batch(g, chain, "plain-sssp").runs == 3


def test_baseline_concurrent_equals_sequential():
    g = random_graph(150, 3, 13)
    pairs = random_pairs_same_component(g, 8, 3)
    qg = sp.build_query_graph(pairs, g.n)
    seq = sp.baseline_batch(g, qg, "plain-bids")
    conc = sp.baseline_batch(g, qg, "plain-bids-concurrent")
    assert np.array_equal(seq.distances, conc.distances)
    assert seq.runs == conc.runs == len(qg.edges)


def test_baseline_unknown_mode():
    g = g1()
    qg = sp.build_query_graph([(0, 1)], g.n)
    with pytest.raises(ValueError):
        sp.baseline_batch(g, qg, "warp")


def test_all_algos_agree_with_oracle():
    g = random_graph(300, 4, 8)
    pairs = random_pairs_same_component(g, 7, 21)
    qg = sp.build_query_graph(pairs, g.n)
    want = np.array([sp.dijkstra(g, s)[t] for s, t in np.asarray(pairs).tolist()])
    results = {
        "multi": sp.multi_bids(g, qg).distances,
        "vc": sp.vc_sssp_batch(g, qg).distances,
        "plain-bids": sp.baseline_batch(g, qg, "plain-bids").distances,
        "plain-bids-concurrent": sp.baseline_batch(g, qg, "plain-bids-concurrent").distances,
        "plain-sssp": sp.baseline_batch(g, qg, "plain-sssp").distances,
    }
    for name, got in results.items():
        assert np.array_equal(got, want), name
