"""Dataset loading, synthetic generation, feature masking, and results CSV."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, fields

import numpy as np

from .graph import FeatureMatrix, UndirectedGraph


class ParseError(ValueError):
    pass


@dataclass
class DatasetBundle:
    graph: UndirectedGraph
    features: FeatureMatrix
    name: str

    def __post_init__(self):
        if self.features.n != self.graph.n:
            raise ValueError(
                f"feature rows ({self.features.n}) != node count ({self.graph.n})"
            )


@dataclass
class ExperimentRecord:
    """One (method, dataset, model, T, k, alpha, epsilon, drop, trial) result row."""

    method: str
    dataset: str
    model: str
    T: int
    k: int
    alpha: float
    epsilon: float
    drop: float
    trial: int
    seed: int
    sigma: float
    vt: int
    et: int
    wall_ms: float


CSV_HEADER = [f.name for f in fields(ExperimentRecord)]


def load_edge_list(path):
    """Edge-list loader: two whitespace-separated ids per line, `#` comments.

    Duplicates and self-loops are dropped (counted); arbitrary source ids
    are remapped to dense indices.  Returns (graph, id_map, dropped).
    """
    raw_edges = []
    dropped = 0
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(f"{path}:{lineno}: expected two ids, got {line!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(f"{path}:{lineno}: non-integer id in {line!r}")
            if u == v:
                dropped += 1
                continue
            raw_edges.append((u, v))
    id_map = {}
    for u, v in raw_edges:
        for x in (u, v):
            if x not in id_map:
                id_map[x] = len(id_map)
    g = UndirectedGraph(len(id_map))
    for u, v in raw_edges:
        a, b = id_map[u], id_map[v]
        if g.has_edge(a, b):
            dropped += 1
        else:
            g.add_edge(a, b)
    return g, id_map, dropped


def write_edge_list(path, graph):
    with open(path, "w") as fh:
        for u, v in graph.edges():
            fh.write(f"{u} {v}\n")


def load_features(path, n):
    """Feature file: `node_id<TAB>i1,i2,...` per line, optional `#d=<int>` header.

    Nodes absent from the file get all-zero rows.  Without a declared
    dimension, d = 1 + max index seen.
    """
    declared_d = None
    rows = {}
    max_idx = -1
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            if line.startswith("#"):
                stripped = line[1:].strip()
                if stripped.startswith("d="):
                    declared_d = int(stripped[2:])
                continue
            parts = line.split("\t")
            try:
                node = int(parts[0])
            except ValueError:
                raise ParseError(f"{path}:{lineno}: bad node id in {line!r}")
            idx = []
            if len(parts) > 1 and parts[1].strip():
                idx = [int(tok) for tok in parts[1].split(",")]
            if declared_d is not None:
                for i in idx:
                    if i >= declared_d:
                        raise ParseError(
                            f"{path}:{lineno}: feature index {i} >= declared d={declared_d}"
                        )
            if idx:
                max_idx = max(max_idx, max(idx))
            rows[node] = idx
    d = declared_d if declared_d is not None else max_idx + 1
    return FeatureMatrix([rows.get(u, []) for u in range(n)], d)


def gen_synthetic_homophily(n, d, marker_count, edge_prob_in, edge_prob_out, rng,
                            noise_prob=0.05):
    """Planted-partition attributed graph for desk-scale testing.

    Each node holds each of the first `marker_count` feature bits
    independently with probability 1/marker_count (plus random noise bits
    in the remaining positions); pairs sharing at least one marker connect
    with edge_prob_in, all others with edge_prob_out.  Multi-marker nodes
    bridge several marker communities and acquire proportionally higher
    degree, giving the graph hubs.
    """
    if marker_count > d or marker_count < 1:
        raise ValueError("need 1 <= marker_count <= d")
    for p in (edge_prob_in, edge_prob_out, noise_prob):
        if not 0.0 <= p <= 1.0:
            raise ValueError("probabilities must lie in [0, 1]")
    markers = rng.random((n, marker_count)) < 1.0 / marker_count
    rows = []
    for u in range(n):
        row = {int(i) for i in np.flatnonzero(markers[u])}
        noise = np.flatnonzero(rng.random(d - marker_count) < noise_prob)
        row.update(int(marker_count + i) for i in noise)
        rows.append(row)
    share = markers @ markers.T > 0
    g = UndirectedGraph(n)
    for u in range(n):
        draws = rng.random(n - u - 1)
        hit = draws < np.where(share[u, u + 1 :], edge_prob_in, edge_prob_out)
        for off in np.flatnonzero(hit):
            g.add_edge(u, int(u + 1 + off))
    return DatasetBundle(graph=g, features=FeatureMatrix(rows, d), name="synthetic")


def mask_features(features, fraction, rng):
    """Zero a uniformly random ceil(fraction * d) subset of positions per node.

    Positions are zeroed rather than deleted so d (and hence the model
    architecture) is unchanged across drop levels.
    """
    if not 0.0 <= fraction < 1.0:
        raise ValueError("fraction must be in [0, 1)")
    if fraction == 0.0:
        return features
    d = features.d
    n_drop = math.ceil(fraction * d)
    rows = []
    for row in features.rows:
        dropped = set(rng.choice(d, size=n_drop, replace=False).tolist())
        rows.append(set(row) - dropped)
    return FeatureMatrix(rows, d)


def write_records(path, records, append=False):
    """Results CSV with the fixed schema; numbers keep full precision."""
    mode = "a" if append else "w"
    with open(path, mode, newline="") as fh:
        writer = csv.writer(fh)
        if not append:
            writer.writerow(CSV_HEADER)
        for r in records:
            writer.writerow(
                [
                    r.method, r.dataset, r.model, r.T, r.k,
                    repr(float(r.alpha)), repr(float(r.epsilon)),
                    repr(float(r.drop)), r.trial, r.seed,
                    repr(float(r.sigma)), r.vt, r.et, repr(float(r.wall_ms)),
                ]
            )


def read_records(path):
    out = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_HEADER:
            raise ParseError(f"unexpected CSV header {reader.fieldnames}")
        for row in reader:
            out.append(
                ExperimentRecord(
                    method=row["method"], dataset=row["dataset"], model=row["model"],
                    T=int(row["T"]), k=int(row["k"]),
                    alpha=float(row["alpha"]), epsilon=float(row["epsilon"]),
                    drop=float(row["drop"]), trial=int(row["trial"]),
                    seed=int(row["seed"]), sigma=float(row["sigma"]),
                    vt=int(row["vt"]), et=int(row["et"]),
                    wall_ms=float(row["wall_ms"]),
                )
            )
    return out
