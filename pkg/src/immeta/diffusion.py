"""Cascade simulation, spread estimation, and seed selection.

Spread under an IC-style cascade equals the expected number of nodes
reachable from the seed set when every arc is independently "live" with
its probability.  That live-edge view powers both the enumeration oracle
(exact_spread) and the common-random-numbers estimator used inside the
greedy loop, where a fixed set of live-graph replicates makes the
empirical spread exactly submodular and lazy (CELF) selection provably
identical to naive greedy.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np


@dataclass
class SpreadEstimate:
    mean: float
    replicates: int
    stderr: float


def _replicate_rng(master_seed, i):
    """Counter-derived stream for replicate i, independent of run order."""
    return np.random.default_rng(
        np.random.SeedSequence(entropy=int(master_seed), spawn_key=(int(i),))
    )


def simulate_cascade(graph, seeds, rng):
    """One discrete-time cascade; returns the activated node set.

    Each newly activated node gets a single activation attempt per
    outgoing arc with that arc's probability.
    """
    if not seeds:
        raise ValueError("seed set must be nonempty")
    active = np.zeros(graph.n, dtype=bool)
    frontier = sorted(set(seeds))
    active[frontier] = True
    while frontier:
        tgt_chunks = []
        prob_chunks = []
        for u in frontier:
            t, p = graph.out_arcs(u)
            if len(t):
                tgt_chunks.append(t)
                prob_chunks.append(p)
        if not tgt_chunks:
            break
        targets = np.concatenate(tgt_chunks)
        probs = np.concatenate(prob_chunks)
        hits = targets[(rng.random(len(targets)) < probs) & ~active[targets]]
        if len(hits) == 0:
            break
        frontier = np.unique(hits).tolist()
        active[frontier] = True
    return set(np.flatnonzero(active).tolist())


def estimate_spread(graph, seeds, R, master_seed):
    """Monte-Carlo spread estimate over R independent cascades.

    Replicate i draws from its own counter-derived stream, so the result
    is bit-identical regardless of execution order or worker count.
    """
    if R < 1:
        raise ValueError("replicate count must be >= 1")
    sizes = np.empty(R)
    for i in range(R):
        sizes[i] = len(simulate_cascade(graph, seeds, _replicate_rng(master_seed, i)))
    mean = float(sizes.mean())
    se = float(sizes.std(ddof=1) / np.sqrt(R)) if R > 1 else 0.0
    return SpreadEstimate(mean=mean, replicates=R, stderr=se)


MAX_EXACT_ARCS = 20


def _outcome_weights(probs):
    a = len(probs)
    masks = np.arange(1 << a, dtype=np.int64)
    w = np.ones(1 << a)
    for j in range(a):
        lit = (masks >> j) & 1
        w *= np.where(lit, probs[j], 1.0 - probs[j])
    return w


def exact_spread(graph, seeds):
    """Exact expected spread by enumerating all live-arc outcomes."""
    if not seeds:
        raise ValueError("seed set must be nonempty")
    a = graph.n_arcs
    if a > MAX_EXACT_ARCS:
        raise ValueError(f"{a} arcs exceeds the enumeration bound {MAX_EXACT_ARCS}")
    arc_src = np.repeat(np.arange(graph.n), np.diff(graph.indptr))
    arc_tgt = graph.indices
    weights = _outcome_weights(graph.probs)
    total = 0.0
    seeds = sorted(set(seeds))
    for mask in range(1 << a):
        adj = {}
        for j in range(a):
            if (mask >> j) & 1:
                adj.setdefault(int(arc_src[j]), []).append(int(arc_tgt[j]))
        reached = set(seeds)
        stack = list(seeds)
        while stack:
            u = stack.pop()
            for v in adj.get(u, ()):
                if v not in reached:
                    reached.add(v)
                    stack.append(v)
        total += weights[mask] * len(reached)
    return float(total)


class ExactSpreadEvaluator:
    """Enumeration-backed marginal-gain evaluator for greedy selection.

    Precomputes, per live-arc outcome, the reachable set of every node as
    a bitmask, so each marginal gain is a weighted popcount sweep.
    """

    def __init__(self, graph):
        a = graph.n_arcs
        if a > MAX_EXACT_ARCS:
            raise ValueError(f"{a} arcs exceeds the enumeration bound {MAX_EXACT_ARCS}")
        self.n = graph.n
        self.weights = _outcome_weights(graph.probs)
        arc_src = np.repeat(np.arange(graph.n), np.diff(graph.indptr))
        arc_tgt = graph.indices
        self.reach = []
        for mask in range(1 << a):
            adj = {}
            for j in range(a):
                if (mask >> j) & 1:
                    adj.setdefault(int(arc_src[j]), []).append(int(arc_tgt[j]))
            row = [0] * graph.n
            for s in range(graph.n):
                reached = 1 << s
                stack = [s]
                while stack:
                    u = stack.pop()
                    for v in adj.get(u, ()):
                        if not reached >> v & 1:
                            reached |= 1 << v
                            stack.append(v)
                row[s] = reached
            self.reach.append(row)
        self.current = [0] * len(self.reach)
        self.base = 0.0

    def gain(self, v):
        w = self.weights
        total = 0.0
        for m, cur in enumerate(self.current):
            total += w[m] * (cur | self.reach[m][v]).bit_count()
        return total - self.base

    def commit(self, v):
        for m in range(len(self.current)):
            self.current[m] |= self.reach[m][v]
        self.base = sum(
            self.weights[m] * self.current[m].bit_count()
            for m in range(len(self.current))
        )


def _reach_masks(n, adj):
    """Per-node reachability bitmasks for one live graph.

    Tarjan's SCC algorithm emits components after all their descendants,
    so each component's reach mask is its member mask OR'd with the
    already-final masks of its out-neighbors.
    """
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack = []
    comp_reach = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        # iterative Tarjan: (node, iterator position) call stack
        call = [(root, 0)]
        while call:
            u, pos = call.pop()
            if pos == 0:
                index[u] = low[u] = counter
                counter += 1
                stack.append(u)
                on_stack[u] = True
            nbrs = adj.get(u, ())
            advanced = False
            for j in range(pos, len(nbrs)):
                w = nbrs[j]
                if index[w] == -1:
                    call.append((u, j + 1))
                    call.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[u] = min(low[u], index[w])
            if advanced:
                continue
            if low[u] == index[u]:
                members = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = len(comp_reach)
                    members.append(w)
                    if w == u:
                        break
                mask = 0
                for w in members:
                    mask |= 1 << w
                for w in members:
                    for x in adj.get(w, ()):
                        if comp[x] != comp[w]:
                            mask |= comp_reach[comp[x]]
                comp_reach.append(mask)
            if call:
                parent = call[-1][0]
                low[parent] = min(low[parent], low[u])
    return [comp_reach[comp[u]] for u in range(n)]


class LiveEdgeEvaluator:
    """Monte-Carlo marginal-gain evaluator over fixed live-graph replicates.

    All candidates in all rounds see the same R live graphs, so the
    empirical spread is submodular and evaluation order cannot change the
    selected seeds.  Reachable sets are precomputed per replicate as
    bitmasks (via SCC condensation), so each gain query is R OR-popcount
    operations.
    """

    def __init__(self, graph, R, master_seed):
        self.n = graph.n
        self.R = R
        arc_src = np.repeat(np.arange(graph.n), np.diff(graph.indptr))
        arc_tgt = graph.indices
        probs = graph.probs
        self.reach = []
        for i in range(R):
            rng = _replicate_rng(master_seed, i)
            live = rng.random(len(probs)) < probs
            adj = {}
            for s, t in zip(arc_src[live], arc_tgt[live]):
                adj.setdefault(int(s), []).append(int(t))
            self.reach.append(_reach_masks(self.n, adj))
        self.active = [0] * R
        self.base = 0.0

    def gain(self, v):
        total = 0
        active = self.active
        for i, masks in enumerate(self.reach):
            total += (active[i] | masks[v]).bit_count() - active[i].bit_count()
        return total / self.R

    def commit(self, v):
        for i, masks in enumerate(self.reach):
            self.active[i] |= masks[v]
        self.base = sum(a.bit_count() for a in self.active) / self.R


def degree_discount(wadj, k, p=0.1):
    """Degree-discount seed selection on a weighted symmetric adjacency.

    Generalizes the classic heuristic to estimated (theta-weighted)
    degrees: dd(v) = d(v) - 2 t(v) - (d(v) - t(v)) * t(v) * p, where t(v)
    is the theta mass from v toward already-selected seeds.
    """
    n = len(wadj)
    if k > n:
        raise ValueError(f"k={k} exceeds node count {n}")
    d = [sum(th for _, th in a) for a in wadj]
    t = [0.0] * n
    seeds = []
    chosen = [False] * n
    for _ in range(k):
        best, best_dd = -1, -np.inf
        for v in range(n):
            if chosen[v]:
                continue
            dd = d[v] - 2 * t[v] - (d[v] - t[v]) * t[v] * p
            if dd > best_dd:
                best, best_dd = v, dd
        seeds.append(best)
        chosen[best] = True
        for v, th in wadj[best]:
            if not chosen[v]:
                t[v] += th
    return seeds


def modified_greedy(graph, k, eligible=None, R=20000, seed=0, evaluator=None):
    """CELF-accelerated greedy maximization of the estimated spread.

    Lazy re-evaluation with stale gains as upper bounds; the top entry is
    re-evaluated until current.  Ties break toward the smaller node id.
    """
    return _greedy(graph, k, eligible, R, seed, evaluator, lazy=True)


def naive_greedy(graph, k, eligible=None, R=20000, seed=0, evaluator=None):
    """Reference greedy that re-evaluates every candidate each round."""
    return _greedy(graph, k, eligible, R, seed, evaluator, lazy=False)


def _greedy(graph, k, eligible, R, seed, evaluator, lazy):
    if eligible is None:
        eligible = range(graph.n)
    eligible = sorted(set(eligible))
    if len(eligible) < k:
        raise ValueError(f"{len(eligible)} eligible nodes, need at least {k}")
    if evaluator is None:
        evaluator = LiveEdgeEvaluator(graph, R, seed)
    seeds = []
    if lazy:
        heap = [(-evaluator.gain(v), v, 0) for v in eligible]
        heapq.heapify(heap)
        for it in range(k):
            while True:
                negg, v, r = heapq.heappop(heap)
                if r == it:
                    break
                heapq.heappush(heap, (-evaluator.gain(v), v, it))
            seeds.append(v)
            evaluator.commit(v)
    else:
        remaining = list(eligible)
        for _ in range(k):
            gains = {v: evaluator.gain(v) for v in remaining}
            v = min(gains, key=lambda u: (-gains[u], u))
            seeds.append(v)
            remaining.remove(v)
            evaluator.commit(v)
    return seeds
