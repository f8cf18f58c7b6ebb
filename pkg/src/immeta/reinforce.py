"""Reinforced weighted graph construction.

Combines the observed subgraph with high-confidence inferred edges and
assigns each directed arc its joint probability that the edge exists AND
the activation along it succeeds, under either diffusion model.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import UndirectedGraph, WeightedDigraph


@dataclass
class DiffusionConfig:
    model: str = "ic"  # "ic" | "wc"
    p: float = 0.1  # constant IC activation probability
    mc: int = 20000  # Monte-Carlo replicates

    def __post_init__(self):
        if self.model not in ("ic", "wc"):
            raise ValueError(f"unknown diffusion model {self.model!r}")
        if not 0.0 < self.p <= 1.0:
            raise ValueError("IC probability must be in (0, 1]")
        if self.mc < 1:
            raise ValueError("replicate count must be >= 1")


def assemble_adjacency(state, theta, n):
    """Generated adjacency matrix over all n nodes.

    Observed edges get 1, pairs with both endpoints queried get 0, and
    remaining pairs get their inferred probability (0 when absent from
    the map).
    """
    a = np.zeros((n, n))
    for u, v in state.edges:
        a[u, v] = a[v, u] = 1.0
    for (u, v), th in theta.items():
        if (min(u, v), max(u, v)) in state.edges:
            raise RuntimeError(f"inferred entry ({u},{v}) collides with an observed edge")
        if u in state.queried and v in state.queried:
            continue
        a[u, v] = a[v, u] = th
    return a


def prune_confident(theta, eps, h_cap=None):
    """Confident edges: entries with probability >= eps, ranked descending.

    Ties under a cap break by ascending pair order for determinism.
    Returns a list of (u, v, theta).
    """
    if not 0.0 < eps < 1.0:
        raise ValueError("threshold must be in (0, 1)")
    kept = [(u, v, th) for (u, v), th in theta.items() if th >= eps]
    kept.sort(key=lambda e: (-e[2], e[0], e[1]))
    if h_cap is not None:
        kept = kept[:h_cap]
    return kept


class ReinforcedGraph:
    """Observed + confident edges with estimated degrees and diffusion arcs."""

    def __init__(self, n, observed, confident):
        self.n = n
        self.observed = sorted(observed)
        self.confident = confident
        # weighted symmetric adjacency: u -> list of (v, theta)
        self.wadj = [[] for _ in range(n)]
        self.confident_adj = [[] for _ in range(n)]
        for u, v in self.observed:
            self.wadj[u].append((v, 1.0))
            self.wadj[v].append((u, 1.0))
        for u, v, th in confident:
            self.wadj[u].append((v, th))
            self.wadj[v].append((u, th))
            self.confident_adj[u].append((v, th))
            self.confident_adj[v].append((u, th))
        for a in self.wadj:
            a.sort()
        self.d_hat = np.array([sum(th for _, th in a) for a in self.wadj])
        self.digraph = None

    @property
    def h(self):
        """Cardinality of the selected confident edge set."""
        return len(self.confident)

    def skeleton(self):
        """Unit-length edge skeleton (observed + confident) for geodesics."""
        g = UndirectedGraph(self.n)
        for u, v in self.observed:
            g.add_edge(u, v)
        for u, v, _ in self.confident:
            g.add_edge(u, v)
        return g

    def dump_arcs(self, fh):
        """Plain-text debug dump: `u v prob kind` per arc."""
        if self.digraph is None:
            raise RuntimeError("assign_probabilities has not been run")
        observed = set(self.observed)
        for u, v, p in self.digraph.arcs():
            kind = "observed" if (min(u, v), max(u, v)) in observed else "confident"
            fh.write(f"{u} {v} {p!r} {kind}\n")


def assign_probabilities(rg, config):
    """Attach joint existence-and-activation probabilities to every arc.

    IC: Pr = theta * p.  WC: Pr(u -> v) = theta / d_hat(v), which makes
    arcs directional.  Observed edges carry theta = 1.
    """
    arcs = []
    for u in range(rg.n):
        for v, th in rg.wadj[u]:
            if config.model == "ic":
                arcs.append((u, v, th * config.p))
            else:
                dv = rg.d_hat[v]
                assert dv > 0, "node with incident arcs must have positive d_hat"
                arcs.append((u, v, th / dv))
    rg.digraph = WeightedDigraph.from_arcs(rg.n, arcs)
    return rg


def build_reinforced(state, theta, n, eps, config, h_cap=None):
    """Full NDP2 step: prune to confident edges and assign probabilities."""
    confident = prune_confident(theta, eps, h_cap)
    rg = ReinforcedGraph(n, state.edges, confident)
    return assign_probabilities(rg, config)
