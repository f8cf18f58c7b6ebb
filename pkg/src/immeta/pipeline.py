"""End-to-end orchestration: exploration loop, baselines, and sweeps.

The exploration loop alternates inference, reinforced-graph construction,
and query selection for T steps, then runs CELF greedy on the final
reinforced graph restricted to explored nodes.  Selection never touches
the hidden truth; the reported spread is always evaluated on the true
graph with independent randomness.
"""
from __future__ import annotations

import hashlib
import itertools
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .data_io import ExperimentRecord, write_records
from .diffusion import estimate_spread, modified_greedy
from .graph import WeightedDigraph
from .inference import (LogisticPairModel, SiameseModel, TrainConfig,
                        build_training_pairs, infer_all, train)
from .oracle import HiddenGraphOracle
from .ranking import (ExplorationExhausted, anchor_seeds, baseline_select,
                      rank_degree_ablation, rank_nodes, select_query_node)
from .reinforce import DiffusionConfig, build_reinforced

METHODS = (
    "im-meta", "im-meta-lr", "im-meta-degree", "im-meta-residual",
    "rand", "dfs", "change", "upper",
)

# spawn-key tags for the per-trial random streams
_TAG_INIT, _TAG_MASK, _TAG_TRAIN, _TAG_QUERY, _TAG_SELECT, _TAG_EVAL = range(6)


@dataclass
class RunConfig:
    method: str = "im-meta"
    dataset: str = "synthetic"
    T: int = 60
    k: int = 5
    model: str = "ic"
    alpha: float = 1.0
    epsilon: float = 0.5
    p: float = 0.1
    mc: int = 20000  # evaluation replicates
    selection_mc: int | None = None  # defaults to mc
    trials: int = 10
    drop: float = 0.0
    seed: int = 0
    h_cap: int | None = None
    epochs: int = 50
    lr: float = 0.01
    batch_size: int = 16
    neg_ratio: float = 1.0
    hidden: int = 256

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.T < 0 or self.k < 1:
            raise ValueError("need T >= 0 and k >= 1")

    @property
    def sel_mc(self):
        return self.mc if self.selection_mc is None else self.selection_mc


@dataclass
class RunOutcome:
    state: object  # final ObservedState (None for upper)
    seeds: list
    sigma: object  # SpreadEstimate on the true graph
    trace: list = field(default_factory=list)  # (t, |V_t|, |E_t|, node, H)
    queries_executed: int = 0


def _stream(trial_seed, tag):
    return np.random.default_rng(np.random.SeedSequence(trial_seed, spawn_key=(tag,)))


def _int_seed(trial_seed, tag):
    return int(np.random.SeedSequence(trial_seed, spawn_key=(tag,)).generate_state(1)[0])


def derive_trial_seed(master_seed, cfg, trial):
    """Stable per-cell seed from the master seed and all axis values."""
    key = "|".join(
        str(x)
        for x in (
            master_seed, cfg.method, cfg.dataset, cfg.model, cfg.T, cfg.k,
            cfg.alpha, cfg.epsilon, cfg.drop, trial,
        )
    )
    digest = hashlib.sha256(key.encode()).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def _evaluate(oracle, cfg, seeds, trial_seed):
    truth = oracle.evaluation_graph(cfg.model, cfg.p)
    return estimate_spread(truth, seeds, cfg.mc, _int_seed(trial_seed, _TAG_EVAL))


def _masked_features(bundle, cfg, trial_seed):
    if cfg.drop == 0.0:
        return bundle.features
    from .data_io import mask_features

    return mask_features(bundle.features, cfg.drop, _stream(trial_seed, _TAG_MASK))


def _select_seeds(digraph, k, eligible, cfg, trial_seed):
    eligible = sorted(eligible)
    k = min(k, len(eligible))
    return modified_greedy(
        digraph, k, eligible, R=cfg.sel_mc, seed=_int_seed(trial_seed, _TAG_SELECT)
    )


def run_im_meta(bundle, cfg, trial_seed):
    """Inference-guided exploration, then seed selection on the final
    reinforced graph."""
    n = bundle.graph.n
    features = _masked_features(bundle, cfg, trial_seed)
    oracle = HiddenGraphOracle(bundle.graph, features, budget=cfg.T)
    state = oracle.init_observed(_stream(trial_seed, _TAG_INIT))
    dcfg = DiffusionConfig(model=cfg.model, p=cfg.p, mc=cfg.mc)
    tcfg = TrainConfig(
        lr=cfg.lr, batch_size=cfg.batch_size, epochs=cfg.epochs,
        neg_ratio=cfg.neg_ratio,
    )
    train_rng = _stream(trial_seed, _TAG_TRAIN)
    model = None
    trace = []

    def inference_step(state):
        nonlocal model
        pairs = build_training_pairs(
            state, n, train_rng, neg_ratio=cfg.neg_ratio
        )
        if pairs is None or pairs.no_negatives:
            # no observed edges, or no certified non-edges yet: training on
            # positives alone just drives every theta to 1, so skip until
            # the first query certifies some negatives
            return {}
        if model is None:
            if cfg.method == "im-meta-lr":
                model = LogisticPairModel(features.d)
            else:
                model = SiameseModel(features.d, hidden=cfg.hidden, rng=train_rng)
        train(model, pairs, features, tcfg, train_rng)
        return infer_all(model, state, features, n)

    for t in range(cfg.T):
        theta = inference_step(state)
        rg = build_reinforced(state, theta, n, cfg.epsilon, dcfg, cfg.h_cap)
        try:
            if cfg.method == "im-meta-degree":
                scores = rank_degree_ablation(rg, state)
            elif cfg.method == "im-meta-residual":
                scores = rank_nodes(rg, state, anchors=set(), alpha=cfg.alpha)
            else:
                anchors = anchor_seeds(rg, state, cfg.k, cfg.p)
                scores = rank_nodes(rg, state, anchors, cfg.alpha)
        except ExplorationExhausted:
            break
        v = select_query_node(scores)
        trace.append((t, len(state.nodes), len(state.edges), v, rg.h))
        state = oracle.query(state, v)

    theta = inference_step(state)
    rg = build_reinforced(state, theta, n, cfg.epsilon, dcfg, cfg.h_cap)
    seeds = _select_seeds(rg.digraph, cfg.k, state.nodes, cfg, trial_seed)
    sigma = _evaluate(oracle, cfg, seeds, trial_seed)
    return RunOutcome(
        state=state, seeds=seeds, sigma=sigma, trace=trace,
        queries_executed=len(state.queried),
    )


def _observed_digraph(state, n, cfg):
    """Diffusion graph over observed edges only (no inference).

    IC uses the constant p; WC uses the observed degree, the only degree
    available without inference.
    """
    adj = state.adjacency(n)
    arcs = []
    for u in range(n):
        for v in adj[u]:
            if cfg.model == "ic":
                arcs.append((u, v, cfg.p))
            else:
                arcs.append((u, v, 1.0 / len(adj[v])))
    return WeightedDigraph.from_arcs(n, arcs)


def run_baseline(bundle, cfg, trial_seed):
    """Rand/DFS/CHANGE exploration, then greedy on the raw observed subgraph."""
    n = bundle.graph.n
    features = _masked_features(bundle, cfg, trial_seed)
    oracle = HiddenGraphOracle(bundle.graph, features, budget=cfg.T)
    state = oracle.init_observed(_stream(trial_seed, _TAG_INIT))
    query_rng = _stream(trial_seed, _TAG_QUERY)
    trace = []
    prev = None
    for t in range(cfg.T):
        try:
            v = baseline_select(cfg.method, state, query_rng, prev=prev)
        except ExplorationExhausted:
            break
        trace.append((t, len(state.nodes), len(state.edges), v, 0))
        state = oracle.query(state, v)
        prev = v
    seeds = _select_seeds(_observed_digraph(state, n, cfg), cfg.k, state.nodes,
                          cfg, trial_seed)
    sigma = _evaluate(oracle, cfg, seeds, trial_seed)
    return RunOutcome(
        state=state, seeds=seeds, sigma=sigma, trace=trace,
        queries_executed=len(state.queried),
    )


def run_upper(bundle, cfg, trial_seed):
    """Greedy with the full true graph: the performance ceiling."""
    oracle = HiddenGraphOracle(bundle.graph, bundle.features, budget=0)
    truth = oracle.evaluation_graph(cfg.model, cfg.p)
    seeds = _select_seeds(truth, cfg.k, range(bundle.graph.n), cfg, trial_seed)
    sigma = _evaluate(oracle, cfg, seeds, trial_seed)
    return RunOutcome(state=None, seeds=seeds, sigma=sigma)


def run_trial(bundle, cfg, trial_seed):
    if cfg.method in ("rand", "dfs", "change"):
        return run_baseline(bundle, cfg, trial_seed)
    if cfg.method == "upper":
        return run_upper(bundle, cfg, trial_seed)
    return run_im_meta(bundle, cfg, trial_seed)


def run_method(bundle, cfg):
    """All trials of one configuration; returns (records, outcomes)."""
    records, outcomes = [], []
    for trial in range(cfg.trials):
        trial_seed = derive_trial_seed(cfg.seed, cfg, trial)
        t0 = time.perf_counter()
        out = run_trial(bundle, cfg, trial_seed)
        wall_ms = 1000.0 * (time.perf_counter() - t0)
        vt = len(out.state.nodes) if out.state is not None else bundle.graph.n
        et = len(out.state.edges) if out.state is not None else bundle.graph.m
        records.append(
            ExperimentRecord(
                method=cfg.method, dataset=cfg.dataset, model=cfg.model,
                T=cfg.T, k=cfg.k, alpha=cfg.alpha, epsilon=cfg.epsilon,
                drop=cfg.drop, trial=trial, seed=trial_seed,
                sigma=out.sigma.mean, vt=vt, et=et, wall_ms=wall_ms,
            )
        )
        outcomes.append(out)
    return records, outcomes


SWEEP_AXES = ("method", "model", "T", "k", "alpha", "epsilon", "drop")


def run_suite(bundle, base_cfg, axes, out_path=None, append=False, verbose=False):
    """Cartesian sweep over the requested axes.

    A failing cell is recorded as an error row (sigma = nan) and the
    suite continues.  Returns (records, failure count).
    """
    for name in axes:
        if name not in SWEEP_AXES:
            raise ValueError(f"unknown sweep axis {name!r}")
    names = [a for a in SWEEP_AXES if a in axes]
    records = []
    failures = 0
    for values in itertools.product(*(axes[a] for a in names)):
        cfg = replace(base_cfg, **dict(zip(names, values)))
        for trial in range(cfg.trials):
            trial_seed = derive_trial_seed(cfg.seed, cfg, trial)
            t0 = time.perf_counter()
            try:
                out = run_trial(bundle, cfg, trial_seed)
                sigma = out.sigma.mean
                vt = len(out.state.nodes) if out.state is not None else bundle.graph.n
                et = len(out.state.edges) if out.state is not None else bundle.graph.m
            except Exception as exc:  # noqa: BLE001 - suite keeps going
                failures += 1
                sigma, vt, et = float("nan"), -1, -1
                if verbose:
                    print(f"cell {dict(zip(names, values))} trial {trial} failed: {exc}")
            wall_ms = 1000.0 * (time.perf_counter() - t0)
            records.append(
                ExperimentRecord(
                    method=cfg.method, dataset=cfg.dataset, model=cfg.model,
                    T=cfg.T, k=cfg.k, alpha=cfg.alpha, epsilon=cfg.epsilon,
                    drop=cfg.drop, trial=trial, seed=trial_seed,
                    sigma=sigma, vt=vt, et=et, wall_ms=wall_ms,
                )
            )
            if verbose:
                print(
                    f"{cfg.method} model={cfg.model} T={cfg.T} k={cfg.k} "
                    f"trial={trial} sigma={sigma:.3f} ({wall_ms:.0f} ms)"
                )
    if out_path is not None:
        write_records(out_path, records, append=append)
    return records, failures
