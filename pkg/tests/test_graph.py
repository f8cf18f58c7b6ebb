import numpy as np
import pytest

from immeta.graph import (FeatureMatrix, UndirectedGraph, WeightedDigraph,
                          bfs_geodesics)


def test_neighbors_triangle():
    g = UndirectedGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert g.neighbors(0) == [1, 2]


def test_neighbors_isolated():
    g = UndirectedGraph(3)
    assert g.neighbors(2) == []


def test_neighbors_path_midpoint():
    g = UndirectedGraph.from_edges(3, [(0, 1), (1, 2)])
    assert g.neighbors(1) == [0, 2]


def test_neighbors_out_of_range():
    g = UndirectedGraph(3)
    with pytest.raises(ValueError):
        g.neighbors(3)
    with pytest.raises(ValueError):
        g.neighbors(-1)


def test_add_edge_counts():
    g = UndirectedGraph(2)
    g.add_edge(0, 1)
    assert g.m == 1
    g.add_edge(1, 0)  # idempotent, either orientation
    assert g.m == 1
    assert g.neighbors(0) == [1] and g.neighbors(1) == [0]


def test_add_edge_rejects_self_loop():
    g = UndirectedGraph(2)
    with pytest.raises(ValueError):
        g.add_edge(0, 0)


def test_bfs_path():
    g = UndirectedGraph.from_edges(3, [(0, 1), (1, 2)])
    assert bfs_geodesics(g, 0).tolist() == [0, 1, 2]


def test_bfs_disconnected_sentinel():
    g = UndirectedGraph.from_edges(3, [(0, 1)])
    assert bfs_geodesics(g, 0).tolist() == [0, 1, 3]


def test_bfs_star():
    g = UndirectedGraph.from_edges(5, [(0, i) for i in range(1, 5)])
    assert bfs_geodesics(g, 0).tolist() == [0, 1, 1, 1, 1]


def test_bfs_source_out_of_range():
    g = UndirectedGraph(2)
    with pytest.raises(ValueError):
        bfs_geodesics(g, 5)


def _random_graph(rng, n, p):
    g = UndirectedGraph(n)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                g.add_edge(u, v)
    return g


def test_handshake_identity():
    rng = np.random.default_rng(0)
    for _ in range(20):
        g = _random_graph(rng, 12, 0.3)
        assert sum(g.degree(u) for u in range(g.n)) == 2 * g.m


def test_geodesic_triangle_inequality():
    rng = np.random.default_rng(1)
    for _ in range(10):
        g = _random_graph(rng, 10, 0.25)
        dist = [bfs_geodesics(g, s) for s in range(g.n)]
        for a in range(g.n):
            for b in range(g.n):
                for c in range(g.n):
                    if dist[a][b] < g.n and dist[b][c] < g.n:
                        assert dist[a][c] <= dist[a][b] + dist[b][c]


def test_add_edge_round_trip():
    rng = np.random.default_rng(2)
    g = UndirectedGraph(8)
    for _ in range(30):
        u, v = rng.integers(8, size=2)
        if u == v:
            continue
        g.add_edge(int(u), int(v))
        assert int(v) in g.neighbors(int(u))
        assert int(u) in g.neighbors(int(v))
        assert g.neighbors(int(u)) == sorted(set(g.neighbors(int(u))))


def test_feature_matrix_bounds():
    fm = FeatureMatrix([{0, 3}, set()], d=4)
    assert fm.dense().tolist() == [[1, 0, 0, 1], [0, 0, 0, 0]]
    with pytest.raises(ValueError):
        FeatureMatrix([{4}], d=4)


def test_weighted_digraph_validation():
    with pytest.raises(ValueError):
        WeightedDigraph.from_arcs(2, [(0, 1, 0.5), (0, 1, 0.6)])
    with pytest.raises(ValueError):
        WeightedDigraph.from_arcs(2, [(0, 1, 1.5)])
    wd = WeightedDigraph.from_arcs(3, [(0, 2, 0.5), (0, 1, 0.25)])
    t, p = wd.out_arcs(0)
    assert t.tolist() == [1, 2] and p.tolist() == [0.25, 0.5]
    assert wd.n_arcs == 2
