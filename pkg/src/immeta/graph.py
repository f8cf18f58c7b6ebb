"""Graph containers and traversal primitives.

Adjacency is kept as sorted integer lists since all target networks are
sparse.  Node ids are dense indices in [0, n).
"""
from __future__ import annotations

import bisect
from collections import deque

import numpy as np


class UndirectedGraph:
    """Simple undirected graph: no self-loops, no parallel edges."""

    def __init__(self, n):
        if n < 0:
            raise ValueError("node count must be non-negative")
        self.n = n
        self.adj = [[] for _ in range(n)]
        self.m = 0

    @classmethod
    def from_edges(cls, n, edges):
        g = cls(n)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    def _check_node(self, u):
        if not 0 <= u < self.n:
            raise ValueError(f"node id {u} out of range [0, {self.n})")

    def neighbors(self, u):
        """Sorted, duplicate-free neighbor list of u."""
        self._check_node(u)
        return self.adj[u]

    def degree(self, u):
        self._check_node(u)
        return len(self.adj[u])

    def has_edge(self, u, v):
        self._check_node(u)
        self._check_node(v)
        a = self.adj[u]
        i = bisect.bisect_left(a, v)
        return i < len(a) and a[i] == v

    def add_edge(self, u, v):
        """Insert edge {u, v}.  Idempotent; self-loops are rejected."""
        if u == v:
            raise ValueError(f"self-loop ({u},{u}) not allowed")
        self._check_node(u)
        self._check_node(v)
        if self.has_edge(u, v):
            return
        bisect.insort(self.adj[u], v)
        bisect.insort(self.adj[v], u)
        self.m += 1

    def edges(self):
        """Iterate edges as (u, v) with u < v."""
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)


def bfs_geodesics(g, source):
    """Hop-count distances from source on an UndirectedGraph.

    Unreachable nodes get the finite sentinel n, which exceeds any
    achievable hop count.
    """
    g._check_node(source)
    dist = np.full(g.n, g.n, dtype=np.int64)
    dist[source] = 0
    q = deque([source])
    while q:
        u = q.popleft()
        du = dist[u]
        for v in g.adj[u]:
            if dist[v] == g.n:
                dist[v] = du + 1
                q.append(v)
    return dist


def bfs_geodesics_adj(adj, source, n):
    """Same as bfs_geodesics but over a raw adjacency list-of-lists."""
    dist = np.full(n, n, dtype=np.int64)
    dist[source] = 0
    q = deque([source])
    while q:
        u = q.popleft()
        du = dist[u]
        for v in adj[u]:
            if dist[v] == n:
                dist[v] = du + 1
                q.append(v)
    return dist


class FeatureMatrix:
    """Binary node features stored sparse as per-row index sets."""

    def __init__(self, rows, d):
        self.rows = [frozenset(r) for r in rows]
        self.d = d
        for r in self.rows:
            for i in r:
                if not 0 <= i < d:
                    raise ValueError(f"feature index {i} out of range [0, {d})")

    @property
    def n(self):
        return len(self.rows)

    def dense_rows(self, ids):
        """Dense float64 matrix for the given node ids, shape (len(ids), d)."""
        out = np.zeros((len(ids), self.d))
        for k, u in enumerate(ids):
            idx = sorted(self.rows[u])
            if idx:
                out[k, idx] = 1.0
        return out

    def dense(self):
        return self.dense_rows(range(self.n))


class WeightedDigraph:
    """Directed graph with per-arc probabilities in [0, 1], stored in CSR form."""

    def __init__(self, n, indptr, indices, probs):
        self.n = n
        self.indptr = indptr
        self.indices = indices
        self.probs = probs

    @classmethod
    def from_arcs(cls, n, arcs):
        """Build from a list of (u, v, p).  At most one arc per ordered pair."""
        seen = set()
        buckets = [[] for _ in range(n)]
        for u, v, p in arcs:
            if not 0 <= u < n or not 0 <= v < n:
                raise ValueError(f"arc ({u},{v}) out of range")
            if (u, v) in seen:
                raise ValueError(f"duplicate arc ({u},{v})")
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"arc probability {p} outside [0,1]")
            seen.add((u, v))
            buckets[u].append((v, p))
        indptr = np.zeros(n + 1, dtype=np.int64)
        indices = np.empty(len(arcs), dtype=np.int64)
        probs = np.empty(len(arcs))
        pos = 0
        for u in range(n):
            buckets[u].sort()
            for v, p in buckets[u]:
                indices[pos] = v
                probs[pos] = p
                pos += 1
            indptr[u + 1] = pos
        return cls(n, indptr, indices, probs)

    @property
    def n_arcs(self):
        return len(self.indices)

    def out_arcs(self, u):
        """(targets, probs) arrays for arcs leaving u."""
        lo, hi = self.indptr[u], self.indptr[u + 1]
        return self.indices[lo:hi], self.probs[lo:hi]

    def arcs(self):
        for u in range(self.n):
            lo, hi = self.indptr[u], self.indptr[u + 1]
            for k in range(lo, hi):
                yield (u, int(self.indices[k]), float(self.probs[k]))
