import io

import numpy as np
import pytest

from immeta.oracle import ObservedState
from immeta.reinforce import (DiffusionConfig, ReinforcedGraph,
                              assemble_adjacency, assign_probabilities,
                              build_reinforced, prune_confident)


def _state(nodes, edges, queried):
    return ObservedState(
        nodes=frozenset(nodes),
        edges=frozenset((min(u, v), max(u, v)) for u, v in edges),
        queried=frozenset(queried),
        step=len(queried),
    )


# ---------------------------------------------------------------- adjacency

def test_adjacency_cases():
    s = _state({0, 1, 2}, [(0, 1)], {0, 2})
    a = assemble_adjacency(s, {(1, 2): 0.6}, 4)
    assert a[0, 1] == a[1, 0] == 1.0  # observed edge
    assert a[0, 2] == 0.0  # both endpoints queried, no edge
    assert a[1, 2] == a[2, 1] == 0.6  # uncertain pair keeps theta
    assert a[1, 3] == 0.0  # absent from the map
    assert np.all(np.diag(a) == 0.0)


def test_adjacency_collision_error():
    s = _state({0, 1}, [(0, 1)], set())
    with pytest.raises(RuntimeError):
        assemble_adjacency(s, {(0, 1): 0.4}, 2)


def test_adjacency_queried_pair_theta_suppressed():
    s = _state({0, 1}, [], {0, 1})
    a = assemble_adjacency(s, {(0, 1): 0.9}, 2)
    assert a[0, 1] == 0.0


# ---------------------------------------------------------------- pruning

def test_prune_threshold_straddle():
    kept = prune_confident({(0, 1): 0.6, (0, 2): 0.4}, 0.5)
    assert kept == [(0, 1, 0.6)]


def test_prune_all_below_gives_observed_graph():
    s = _state({0, 1}, [(0, 1)], set())
    rg = build_reinforced(s, {(0, 2): 0.3}, 3, 0.5, DiffusionConfig())
    assert rg.h == 0
    assert rg.observed == [(0, 1)]
    assert sorted(rg.digraph.arcs()) == [(0, 1, 0.1), (1, 0, 0.1)]


def test_prune_cap_keeps_top():
    theta = {(0, 1): 0.9, (0, 2): 0.8, (1, 2): 0.7}
    kept = prune_confident(theta, 0.5, h_cap=2)
    assert [(u, v) for u, v, _ in kept] == [(0, 1), (0, 2)]


def test_prune_tie_at_cap_breaks_by_pair_order():
    theta = {(2, 3): 0.5, (0, 1): 0.5, (1, 2): 0.5}
    kept = prune_confident(theta, 0.5, h_cap=2)
    assert [(u, v) for u, v, _ in kept] == [(0, 1), (1, 2)]


def test_prune_eps_bounds():
    with pytest.raises(ValueError):
        prune_confident({}, 0.0)
    with pytest.raises(ValueError):
        prune_confident({}, 1.0)


def test_prune_monotone_in_eps():
    rng = np.random.default_rng(0)
    theta = {(u, v): float(rng.random()) for u in range(6) for v in range(u + 1, 6)}
    prev = None
    for eps in (0.2, 0.4, 0.6, 0.8):
        cur = {(u, v) for u, v, _ in prune_confident(theta, eps)}
        if prev is not None:
            assert cur <= prev
        prev = cur


# ---------------------------------------------------------------- probabilities

def _worked_example():
    # observed edge v2-v1 plus one confident inferred edge v4-v1 (theta 0.6):
    # estimated degree of v1 is 1 + 0.6 = 1.6
    s = _state({0, 1}, [(0, 1)], set())
    return s, {(0, 3): 0.6}


def test_wc_worked_example():
    s, theta = _worked_example()
    rg = build_reinforced(s, theta, 4, 0.5, DiffusionConfig(model="wc"))
    assert rg.d_hat[0] == pytest.approx(1.6, abs=0)
    arcs = {(u, v): p for u, v, p in rg.digraph.arcs()}
    assert arcs[(1, 0)] == pytest.approx(1 / 1.6, abs=1e-15)
    assert arcs[(3, 0)] == pytest.approx(0.6 / 1.6, abs=1e-15)


def test_ic_worked_example():
    s, theta = _worked_example()
    rg = build_reinforced(s, theta, 4, 0.5, DiffusionConfig(model="ic", p=0.1))
    arcs = {(u, v): p for u, v, p in rg.digraph.arcs()}
    assert arcs[(0, 1)] == arcs[(1, 0)] == 0.1
    assert arcs[(0, 3)] == arcs[(3, 0)] == pytest.approx(0.06, abs=1e-15)


def test_wc_isolated_observed_edge():
    s = _state({0, 1}, [(0, 1)], set())
    rg = build_reinforced(s, {}, 2, 0.5, DiffusionConfig(model="wc"))
    arcs = {(u, v): p for u, v, p in rg.digraph.arcs()}
    assert arcs == {(0, 1): 1.0, (1, 0): 1.0}


def test_wc_incoming_mass_normalized():
    rng = np.random.default_rng(1)
    s = _state({0, 1, 2, 3}, [(0, 1), (1, 2)], set())
    theta = {(0, 4): 0.7, (2, 4): 0.55, (3, 4): 0.9, (0, 3): 0.6}
    rg = build_reinforced(s, theta, 5, 0.5, DiffusionConfig(model="wc"))
    incoming = np.zeros(5)
    for u, v, p in rg.digraph.arcs():
        incoming[v] += p
    for v in range(5):
        if rg.d_hat[v] > 0:
            assert incoming[v] == pytest.approx(1.0, abs=1e-12)


def test_ic_scales_linearly_in_p():
    s, theta = _worked_example()
    a = build_reinforced(s, theta, 4, 0.5, DiffusionConfig(model="ic", p=0.1))
    b = build_reinforced(s, theta, 4, 0.5, DiffusionConfig(model="ic", p=0.3))
    pa = {(u, v): p for u, v, p in a.digraph.arcs()}
    pb = {(u, v): p for u, v, p in b.digraph.arcs()}
    for key in pa:
        assert pb[key] == pytest.approx(3 * pa[key], rel=1e-12)


def test_identity_under_empty_pruning():
    s = _state({0, 1, 2}, [(0, 1), (1, 2)], set())
    theta = {(0, 2): 0.95}
    rg = build_reinforced(s, theta, 3, 0.9, DiffusionConfig())
    assert rg.h == 1  # 0.95 >= 0.9 keeps the edge
    rg_strict = build_reinforced(s, theta, 3, 0.99, DiffusionConfig())
    assert rg_strict.h == 0  # 0.95 < 0.99 drops it
    rg2 = build_reinforced(s, {(0, 2): 0.4}, 3, 0.5, DiffusionConfig())
    assert rg2.h == 0
    assert {(u, v) for u, v, _ in rg2.digraph.arcs()} == {(0, 1), (1, 0), (1, 2), (2, 1)}


def test_invariants_hold():
    s = _state({0, 1, 2}, [(0, 1)], set())
    theta = {(0, 2): 0.8, (1, 2): 0.55}
    rg = build_reinforced(s, theta, 3, 0.5, DiffusionConfig(model="wc"))
    observed = set(rg.observed)
    confident = {(u, v) for u, v, _ in rg.confident}
    assert observed.isdisjoint(confident)
    assert all(th >= 0.5 for _, _, th in rg.confident)
    assert all(0.0 <= p <= 1.0 for _, _, p in rg.digraph.arcs())
    # d_hat recomputed independently
    for v in range(3):
        expected = sum(th for _, th in rg.wadj[v])
        assert rg.d_hat[v] == pytest.approx(expected, abs=0)


def test_dump_arcs_format():
    s, theta = _worked_example()
    rg = build_reinforced(s, theta, 4, 0.5, DiffusionConfig())
    buf = io.StringIO()
    rg.dump_arcs(buf)
    lines = buf.getvalue().strip().split("\n")
    assert len(lines) == 4
    u, v, p, kind = lines[0].split()
    assert (int(u), int(v)) == (0, 1) and float(p) == 0.1 and kind == "observed"
    assert any(line.endswith("confident") for line in lines)


def test_dump_before_assignment_errors():
    rg = ReinforcedGraph(2, [(0, 1)], [])
    with pytest.raises(RuntimeError):
        rg.dump_arcs(io.StringIO())


def test_config_validation():
    with pytest.raises(ValueError):
        DiffusionConfig(model="lt")
    with pytest.raises(ValueError):
        DiffusionConfig(p=0.0)
    with pytest.raises(ValueError):
        DiffusionConfig(mc=0)
