import numpy as np
import pytest

from immeta.oracle import ObservedState
from immeta.ranking import (ExplorationExhausted, anchor_seeds,
                            baseline_select, rank_degree_ablation, rank_nodes,
                            residual_degree, select_query_node)
from immeta.reinforce import DiffusionConfig, build_reinforced


def _state(nodes, edges, queried):
    return ObservedState(
        nodes=frozenset(nodes),
        edges=frozenset((min(u, v), max(u, v)) for u, v in edges),
        queried=frozenset(queried),
        step=len(queried),
    )


def _rg(state, theta, n, eps=0.5):
    return build_reinforced(state, theta, n, eps, DiffusionConfig())


# ---------------------------------------------------------------- residual degree

def test_residual_zero_without_confident_edges():
    s = _state({0, 1}, [(0, 1)], set())
    assert residual_degree(_rg(s, {}, 2), s, 0) == 0.0


def test_residual_single_confident_edge():
    s = _state({0, 1}, [(0, 1)], set())
    rg = _rg(s, {(0, 3): 0.6}, 4)
    assert residual_degree(rg, s, 0) == pytest.approx(0.6, abs=0)
    assert residual_degree(rg, s, 1) == 0.0


def test_residual_requires_explored_node():
    s = _state({0, 1}, [(0, 1)], set())
    with pytest.raises(ValueError):
        residual_degree(_rg(s, {}, 3), s, 2)


def test_residual_nonnegative_random():
    rng = np.random.default_rng(0)
    for _ in range(10):
        s = _state({0, 1, 2}, [(0, 1), (1, 2)], set())
        theta = {
            (u, v): float(rng.random())
            for u in range(3)
            for v in range(3, 6)
        }
        rg = _rg(s, theta, 6)
        for u in s.nodes:
            assert residual_degree(rg, s, u) >= 0.0


# ---------------------------------------------------------------- scenario graph

def _scenario():
    """Two frontier nodes with a distant hub.

    v1 (node 0) has two confident edges (theta 1.0) -> residual 2 but sits
    three hops from the hub; v2 (node 1) has one confident edge to the hub
    (node 2), which itself carries four more confident edges and is the
    clear degree-discount winner.  Observed path: 0 - 9 - 1.
    """
    s = _state({0, 1, 9}, [(0, 9), (9, 1)], set())
    theta = {
        (0, 4): 1.0, (0, 5): 1.0,  # v1's residual mass
        (1, 2): 1.0,               # v2 -> hub
        (2, 6): 1.0, (2, 7): 1.0, (2, 8): 1.0, (3, 2): 1.0,  # hub fan-out
    }
    return s, _rg(s, theta, 10)


def test_scenario_residual_degrees():
    s, rg = _scenario()
    assert residual_degree(rg, s, 0) == 2.0
    assert residual_degree(rg, s, 1) == 1.0


def test_scenario_anchor_is_hub():
    s, rg = _scenario()
    assert anchor_seeds(rg, s, 1) == {2}


def test_scenario_alpha_tradeoff():
    s, rg = _scenario()
    anchors = anchor_seeds(rg, s, 1)
    with_dist = rank_nodes(rg, s, anchors, alpha=1.0)
    assert select_query_node(with_dist) == 1  # proximity to the hub wins
    assert with_dist[1] == pytest.approx(1.0 - 1.0, abs=0)
    assert with_dist[0] == pytest.approx(2.0 - 3.0, abs=0)
    pure_residual = rank_nodes(rg, s, anchors, alpha=0.0)
    assert select_query_node(pure_residual) == 0  # residual degree wins


# ---------------------------------------------------------------- anchors

def test_anchor_excludes_explored():
    # every high-degree node already explored -> empty anchor set
    s = _state({0, 1, 2}, [(0, 1), (1, 2), (0, 2)], set())
    rg = _rg(s, {(0, 3): 0.6}, 4)
    assert anchor_seeds(rg, s, 2) <= {3}
    assert anchor_seeds(rg, s, 1) == set()  # k=1 picks an explored hub


def test_anchor_star_center():
    s = _state({0, 1}, [(0, 1)], set())
    theta = {(2, v): 0.9 for v in range(3, 8)}
    theta[(0, 2)] = 0.9
    rg = _rg(s, theta, 8)
    assert 2 in anchor_seeds(rg, s, 1)


def test_anchor_k_validation():
    s = _state({0, 1}, [(0, 1)], set())
    with pytest.raises(ValueError):
        anchor_seeds(_rg(s, {}, 2), s, 0)


def test_anchor_size_bound():
    s, rg = _scenario()
    for k in (1, 2, 3):
        assert len(anchor_seeds(rg, s, k)) <= k


# ---------------------------------------------------------------- ranking

def test_rank_alpha_zero_is_residual():
    s, rg = _scenario()
    scores = rank_nodes(rg, s, {2}, alpha=0.0)
    assert scores == {u: residual_degree(rg, s, u) for u in s.nodes}


def test_rank_empty_anchors_is_residual():
    s, rg = _scenario()
    scores = rank_nodes(rg, s, set(), alpha=1.0)
    assert scores == {u: residual_degree(rg, s, u) for u in s.nodes}


def test_rank_unreachable_anchor_sentinel():
    # anchor 3 is disconnected from the skeleton: distance sentinel = n
    s = _state({0, 1}, [(0, 1)], set())
    rg = _rg(s, {}, 4)
    scores = rank_nodes(rg, s, {3}, alpha=1.0)
    assert scores == {0: -4.0, 1: -4.0}


def test_rank_excludes_queried():
    s = _state({0, 1, 9}, [(0, 9), (9, 1)], {9})
    rg = _rg(s, {}, 10)
    assert set(rank_nodes(rg, s, set(), 1.0)) == {0, 1}


def test_rank_exhausted():
    s = _state({0, 1}, [(0, 1)], {0, 1})
    with pytest.raises(ExplorationExhausted):
        rank_nodes(_rg(s, {}, 2), s, set(), 1.0)


def test_rank_matches_exhaustive_recomputation():
    rng = np.random.default_rng(3)
    for _ in range(5):
        n = 9
        edges = {(0, 1), (1, 2), (0, 3)}
        s = _state({0, 1, 2, 3}, edges, set())
        theta = {}
        for u in range(4):
            for v in range(4, n):
                if rng.random() < 0.5:
                    theta[(u, v)] = float(np.round(rng.uniform(0.5, 1.0), 3))
        rg = _rg(s, theta, n)
        anchors = anchor_seeds(rg, s, 2)
        alpha = float(rng.random())
        scores = rank_nodes(rg, s, anchors, alpha)
        # independent recomputation with a dense BFS
        from immeta.graph import bfs_geodesics

        skel = rg.skeleton()
        for u in s.nodes:
            expected = residual_degree(rg, s, u)
            for a in anchors:
                expected -= alpha * float(bfs_geodesics(skel, a)[u])
            assert scores[u] == pytest.approx(expected, abs=1e-12)


# ---------------------------------------------------------------- selection

def test_select_unique_max():
    assert select_query_node({3: 1.0, 5: 2.0}) == 5


def test_select_tie_smaller_id():
    assert select_query_node({7: 2.0, 4: 2.0}) == 4


def test_select_single():
    assert select_query_node({6: -1.0}) == 6


def test_select_empty_errors():
    with pytest.raises(ValueError):
        select_query_node({})


# ---------------------------------------------------------------- ablation

def test_degree_ablation_scores():
    s, rg = _scenario()
    scores = rank_degree_ablation(rg, s)
    assert scores[0] == pytest.approx(3.0, abs=0)  # 1 observed + 2 confident
    assert scores[9] == pytest.approx(2.0, abs=0)
    assert select_query_node(scores) == 0


# ---------------------------------------------------------------- baselines

def test_rand_uniform_support():
    s = _state({0, 1, 2}, [(0, 1), (1, 2)], {1})
    rng = np.random.default_rng(0)
    picks = {baseline_select("rand", s, rng) for _ in range(50)}
    assert picks == {0, 2}


def test_dfs_prefers_prev_neighbors():
    s = _state({0, 1, 2, 3}, [(0, 1), (0, 2), (2, 3)], {0})
    rng = np.random.default_rng(1)
    picks = {baseline_select("dfs", s, rng, prev=0) for _ in range(50)}
    assert picks == {1, 2}


def test_dfs_fallback_to_rand():
    s = _state({0, 1, 2}, [(0, 1)], {0, 1})
    rng = np.random.default_rng(2)
    assert baseline_select("dfs", s, rng, prev=1) == 2


def test_change_unqueried_neighbor():
    s = _state({0, 1, 2}, [(0, 1), (1, 2)], {1})
    rng = np.random.default_rng(3)
    picks = {baseline_select("change", s, rng) for _ in range(50)}
    assert picks == {0, 2}


def test_change_fallback_isolated():
    # only an isolated unqueried node remains; neighbor sampling must fall
    # back to the uniform rule
    s = _state({0, 1, 2}, [(0, 1)], {0, 1})
    rng = np.random.default_rng(4)
    assert baseline_select("change", s, rng) == 2


def test_baseline_exhausted_and_unknown():
    s = _state({0, 1}, [(0, 1)], {0, 1})
    rng = np.random.default_rng(5)
    with pytest.raises(ExplorationExhausted):
        baseline_select("rand", s, rng)
    s2 = _state({0, 1}, [(0, 1)], set())
    with pytest.raises(ValueError):
        baseline_select("bogus", s2, rng)


def test_baselines_deterministic_given_rng():
    s = _state({0, 1, 2, 3}, [(0, 1), (1, 2), (2, 3)], {0})
    for strat in ("rand", "dfs", "change"):
        a = [baseline_select(strat, s, np.random.default_rng(7), prev=0)
             for _ in range(5)]
        b = [baseline_select(strat, s, np.random.default_rng(7), prev=0)
             for _ in range(5)]
        assert a == b
