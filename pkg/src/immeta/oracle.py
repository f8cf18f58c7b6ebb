"""Hidden-network simulator with a budgeted neighbor-query interface.

The ground-truth graph stays private; callers see it only through query()
and the final spread-evaluation entry point.  Node features, by contrast,
are collectible metadata and are publicly readable.
"""
from __future__ import annotations

from dataclasses import dataclass


class BudgetExhaustedError(RuntimeError):
    """Raised when a query is attempted with no remaining budget."""


@dataclass(frozen=True)
class ObservedState:
    """Explored subgraph G_t: node set, edge set, and queried set."""

    nodes: frozenset
    edges: frozenset  # pairs (u, v) with u < v
    queried: frozenset
    step: int

    def has_edge(self, u, v):
        return (min(u, v), max(u, v)) in self.edges

    def adjacency(self, n):
        """Observed adjacency as a list of sorted neighbor lists."""
        adj = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for a in adj:
            a.sort()
        return adj

    def degree(self, u):
        return sum(1 for e in self.edges if u in e)


class HiddenGraphOracle:
    """Holds the unknown graph G and answers neighbor queries."""

    def __init__(self, truth, features, budget):
        if budget < 0:
            raise ValueError("budget must be non-negative")
        self._truth = truth
        self.features = features
        self.budget = budget

    @property
    def n(self):
        return self._truth.n

    def init_observed(self, rng, size=4):
        """Sample the initial induced subgraph G_0.

        Grows a breadth-first frontier from a random start node, picking
        uniformly random unvisited neighbors until `size` nodes are
        collected; if the component runs out, random remaining nodes are
        added.  E_0 is the truth-induced edge set; Q_0 is empty.
        """
        if self._truth.n < size:
            raise ValueError(f"graph has {self._truth.n} nodes, need {size}")
        start = int(rng.integers(self._truth.n))
        chosen = [start]
        chosen_set = {start}
        frontier = [v for v in self._truth.neighbors(start)]
        while len(chosen) < size and frontier:
            i = int(rng.integers(len(frontier)))
            v = frontier.pop(i)
            if v in chosen_set:
                continue
            chosen.append(v)
            chosen_set.add(v)
            frontier.extend(w for w in self._truth.neighbors(v) if w not in chosen_set)
        while len(chosen) < size:
            v = int(rng.integers(self._truth.n))
            if v not in chosen_set:
                chosen.append(v)
                chosen_set.add(v)
        edges = frozenset(
            (min(u, v), max(u, v))
            for u in chosen_set
            for v in self._truth.neighbors(u)
            if v in chosen_set and u < v
        )
        return ObservedState(
            nodes=frozenset(chosen_set), edges=edges, queried=frozenset(), step=0
        )

    def query(self, state, v):
        """Reveal all neighbors of v, returning the expanded state."""
        if v not in state.nodes:
            raise RuntimeError(f"node {v} is not observed and cannot be queried")
        if v in state.queried:
            raise RuntimeError(f"node {v} was already queried")
        if self.budget <= 0:
            raise BudgetExhaustedError("query budget exhausted")
        self.budget -= 1
        nbrs = self._truth.neighbors(v)
        nodes = state.nodes | frozenset(nbrs)
        edges = state.edges | frozenset((min(v, u), max(v, u)) for u in nbrs)
        return ObservedState(
            nodes=nodes,
            edges=edges,
            queried=state.queried | {v},
            step=state.step + 1,
        )

    def evaluation_graph(self, model, p=0.1):
        """Diffusion digraph of the TRUE network for final evaluation only.

        IC: every arc gets the constant probability p.  WC: arc (u -> v)
        gets 1 / true-degree(v).
        """
        from .graph import WeightedDigraph

        arcs = []
        for u, v in self._truth.edges():
            if model == "ic":
                arcs.append((u, v, p))
                arcs.append((v, u, p))
            elif model == "wc":
                arcs.append((u, v, 1.0 / self._truth.degree(v)))
                arcs.append((v, u, 1.0 / self._truth.degree(u)))
            else:
                raise ValueError(f"unknown diffusion model {model!r}")
        return WeightedDigraph.from_arcs(self._truth.n, arcs)


def known_non_edges(state, n):
    """Pairs certified absent: one queried endpoint, no observed edge.

    Querying a node reveals ALL of its neighbors, so any non-adjacent pair
    with at least one queried endpoint is a confirmed non-edge.
    """
    out = set()
    for u in state.queried:
        for w in range(n):
            if w == u:
                continue
            pair = (min(u, w), max(u, w))
            if pair not in state.edges:
                out.add(pair)
    return out
