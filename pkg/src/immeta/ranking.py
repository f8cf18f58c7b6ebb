"""Query-node selection.

Topology-aware ranking: residual degree minus a weighted sum of geodesic
distances to degree-discount anchor seeds in the unexplored part, plus the
Rand/DFS/CHANGE baseline selectors and the degree-centrality ablation.
"""
from __future__ import annotations

from .graph import bfs_geodesics
from .diffusion import degree_discount


class ExplorationExhausted(RuntimeError):
    """No queryable candidates remain; the pipeline stops querying early."""


def residual_degree(rg, state, u):
    """Estimated-minus-observed degree: sum of confident-edge thetas at u."""
    if u not in state.nodes:
        raise ValueError(f"node {u} is not in the explored subgraph")
    return float(sum(th for _, th in rg.confident_adj[u]))


def residual_degrees(rg, state):
    return {u: residual_degree(rg, state, u) for u in state.nodes}


def anchor_seeds(rg, state, k, p=0.1):
    """Potentially influential nodes in the unexplored part.

    Degree discount is run on the reinforced graph using estimated
    degrees, then members of V_t are dropped so only unexplored nodes
    remain as anchors.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if rg.n == 0:
        return set()
    seeds = degree_discount(rg.wadj, k, p)
    return set(seeds) - state.nodes


def rank_nodes(rg, state, anchors, alpha):
    """Topology-aware score for every candidate in V_t \\ Q_t.

    score(u) = residual_degree(u) - alpha * sum of hop distances from u to
    each anchor on the reinforced skeleton (sentinel n when unreachable).
    """
    candidates = sorted(state.nodes - state.queried)
    if not candidates:
        raise ExplorationExhausted("no unqueried observed nodes remain")
    scores = {u: residual_degree(rg, state, u) for u in candidates}
    if alpha != 0.0 and anchors:
        skeleton = rg.skeleton()
        for v in sorted(anchors):
            dist = bfs_geodesics(skeleton, v)
            for u in candidates:
                scores[u] -= alpha * float(dist[u])
    return scores


def select_query_node(scores):
    """Argmax of the ranking; ties break toward the smallest node id."""
    if not scores:
        raise ValueError("empty score map")
    return min(scores, key=lambda u: (-scores[u], u))


def rank_degree_ablation(rg, state):
    """Degree-centrality ranking: score = estimated degree d_hat."""
    candidates = sorted(state.nodes - state.queried)
    if not candidates:
        raise ExplorationExhausted("no unqueried observed nodes remain")
    return {u: float(rg.d_hat[u]) for u in candidates}


def baseline_select(strategy, state, rng, prev=None):
    """Rand, DFS, and CHANGE query selectors.

    Rand: uniform over unqueried observed nodes.  DFS: uniform over
    unqueried neighbors of the previously queried node, falling back to
    Rand.  CHANGE: uniform node of V_t, then a uniform unqueried neighbor
    of it in G_t, retried up to |V_t| times before falling back to Rand.
    """
    candidates = sorted(state.nodes - state.queried)
    if not candidates:
        raise ExplorationExhausted("no unqueried observed nodes remain")
    if strategy == "rand":
        return candidates[int(rng.integers(len(candidates)))]
    adj = {u: [] for u in state.nodes}
    for u, v in state.edges:
        adj[u].append(v)
        adj[v].append(u)
    for a in adj.values():
        a.sort()
    if strategy == "dfs":
        if prev is not None:
            pool = [v for v in adj[prev] if v not in state.queried]
            if pool:
                return pool[int(rng.integers(len(pool)))]
        return candidates[int(rng.integers(len(candidates)))]
    if strategy == "change":
        nodes = sorted(state.nodes)
        for _ in range(len(nodes)):
            u = nodes[int(rng.integers(len(nodes)))]
            pool = [v for v in adj[u] if v not in state.queried]
            if pool:
                return pool[int(rng.integers(len(pool)))]
        return candidates[int(rng.integers(len(candidates)))]
    raise ValueError(f"unknown baseline strategy {strategy!r}")
