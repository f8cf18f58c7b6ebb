"""Metadata-driven edge inference.

A twin-MLP model scores node pairs from their binary feature vectors: both
towers share one encoder (weight tying is exact), the embeddings are
combined by a Hadamard product, and an affine head with a sigmoid yields
the edge probability.  Backpropagation is implemented by hand so gradients
can be verified against finite differences.  A logistic-regression variant
on the elementwise feature product is provided as an ablation.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .oracle import known_non_edges


class TrainingDivergedError(RuntimeError):
    """Raised when the loss turns non-finite during training."""


@dataclass
class TrainConfig:
    # 0.1 destabilizes Adam on the ReLU twin-MLP (embeddings collapse to
    # zero); 0.01 is the nearest stable decade.
    lr: float = 0.01
    batch_size: int = 16
    epochs: int = 50
    beta1: float = 0.9
    beta2: float = 0.999
    adam_eps: float = 1e-8
    val_fraction: float = 0.1
    neg_ratio: float = 1.0


@dataclass
class LabeledPairSet:
    """Train/validation split of labeled node pairs (u, v, y)."""

    train: list
    val: list
    no_negatives: bool = False  # degenerate: not a single certified non-edge

    @property
    def pairs(self):
        return self.train + self.val


def sigmoid(z):
    out = np.empty_like(z, dtype=float)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def bce_loss(theta, y):
    eps = 1e-12
    return float(-np.mean(y * np.log(theta + eps) + (1 - y) * np.log(1 - theta + eps)))


def auc_score(labels, scores):
    """Area under the ROC curve via average ranks (ties get half credit)."""
    labels = np.asarray(labels, dtype=float)
    scores = np.asarray(scores, dtype=float)
    n_pos = labels.sum()
    n_neg = len(labels) - n_pos
    if n_pos == 0 or n_neg == 0:
        return float("nan")
    order = np.argsort(scores, kind="mergesort")
    ranks = np.empty(len(scores))
    sorted_scores = scores[order]
    i = 0
    while i < len(scores):
        j = i
        while j + 1 < len(scores) and sorted_scores[j + 1] == sorted_scores[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    rank_sum = ranks[labels == 1].sum()
    return float((rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg))


class _Adam:
    """Adam optimizer over a dict of parameter arrays."""

    def __init__(self, params, cfg):
        self.cfg = cfg
        self.t = 0
        self.m = {k: np.zeros_like(v) for k, v in params.items()}
        self.v = {k: np.zeros_like(v) for k, v in params.items()}

    def step(self, params, grads):
        c = self.cfg
        self.t += 1
        for k in params:
            g = grads[k]
            self.m[k] = c.beta1 * self.m[k] + (1 - c.beta1) * g
            self.v[k] = c.beta2 * self.v[k] + (1 - c.beta2) * g * g
            mhat = self.m[k] / (1 - c.beta1**self.t)
            vhat = self.v[k] / (1 - c.beta2**self.t)
            params[k] -= c.lr * mhat / (np.sqrt(vhat) + c.adam_eps)


class SiameseModel:
    """Twin-MLP edge scorer with a shared two-hidden-layer ReLU encoder."""

    def __init__(self, d, hidden=256, rng=None):
        if rng is None:
            rng = np.random.default_rng(0)
        self.d = d
        self.hidden = hidden
        self.params = {
            "W1": rng.normal(0.0, np.sqrt(2.0 / d), (d, hidden)),
            "b1": np.zeros(hidden),
            "W2": rng.normal(0.0, np.sqrt(2.0 / hidden), (hidden, hidden)),
            "b2": np.zeros(hidden),
            "w": rng.normal(0.0, np.sqrt(1.0 / hidden), hidden),
            "b": np.zeros(1),
        }
        self._opt = None

    def embed(self, x):
        """Encoder output for a batch of feature rows, shape (B, hidden)."""
        p = self.params
        h1 = np.maximum(0.0, x @ p["W1"] + p["b1"])
        return np.maximum(0.0, h1 @ p["W2"] + p["b2"])

    def forward(self, xu, xv):
        eu = self.embed(xu)
        ev = self.embed(xv)
        z = (eu * ev) @ self.params["w"] + self.params["b"][0]
        return sigmoid(z)

    def loss_and_grads(self, xu, xv, y):
        """BCE loss and analytic gradients for one batch."""
        p = self.params
        B = xu.shape[0]

        a1u = xu @ p["W1"] + p["b1"]
        h1u = np.maximum(0.0, a1u)
        a2u = h1u @ p["W2"] + p["b2"]
        eu = np.maximum(0.0, a2u)

        a1v = xv @ p["W1"] + p["b1"]
        h1v = np.maximum(0.0, a1v)
        a2v = h1v @ p["W2"] + p["b2"]
        ev = np.maximum(0.0, a2v)

        prod = eu * ev
        z = prod @ p["w"] + p["b"][0]
        theta = sigmoid(z)
        loss = bce_loss(theta, y)

        dz = (theta - y) / B  # d loss / d z
        grads = {
            "w": prod.T @ dz,
            "b": np.array([dz.sum()]),
            "W1": np.zeros_like(p["W1"]),
            "b1": np.zeros_like(p["b1"]),
            "W2": np.zeros_like(p["W2"]),
            "b2": np.zeros_like(p["b2"]),
        }
        # Both towers share the encoder, so their gradients accumulate.
        for x, a1, h1, a2, e_other in (
            (xu, a1u, h1u, a2u, ev),
            (xv, a1v, h1v, a2v, eu),
        ):
            de = dz[:, None] * p["w"][None, :] * e_other
            da2 = de * (a2 > 0)
            grads["W2"] += h1.T @ da2
            grads["b2"] += da2.sum(axis=0)
            dh1 = da2 @ p["W2"].T
            da1 = dh1 * (a1 > 0)
            grads["W1"] += x.T @ da1
            grads["b1"] += da1.sum(axis=0)
        return loss, grads

    def flat_params(self):
        return {k: v for k, v in self.params.items()}


class LogisticPairModel:
    """Logistic regression on the elementwise product of feature vectors."""

    def __init__(self, d, rng=None):
        self.d = d
        self.params = {"w": np.zeros(d), "b": np.zeros(1)}
        self._opt = None

    def forward(self, xu, xv):
        z = (xu * xv) @ self.params["w"] + self.params["b"][0]
        return sigmoid(z)

    def loss_and_grads(self, xu, xv, y):
        B = xu.shape[0]
        prod = xu * xv
        theta = sigmoid(prod @ self.params["w"] + self.params["b"][0])
        loss = bce_loss(theta, y)
        dz = (theta - y) / B
        return loss, {"w": prod.T @ dz, "b": np.array([dz.sum()])}


def enumerate_uncertain_edges(state, n):
    """All pairs not in E_t with neither endpoint queried.

    Covers the three uncertainty types: both endpoints explored, one
    explored, or both unexplored.
    """
    q = state.queried
    out = set()
    for u in range(n):
        if u in q:
            continue
        for v in range(u + 1, n):
            if v in q:
                continue
            if (u, v) not in state.edges:
                out.add((u, v))
    return out


def build_training_pairs(state, n, rng, neg_ratio=1.0, val_fraction=0.1):
    """Labeled pairs: positives = E_t, negatives sampled from certified non-edges.

    Returns None when no edges have been observed yet (training is skipped
    and the caller falls back to an empty probability map).
    """
    positives = sorted(state.edges)
    if not positives:
        return None
    non_edges = sorted(known_non_edges(state, n))
    n_neg = min(len(non_edges), int(round(neg_ratio * len(positives))))
    if n_neg > 0:
        idx = rng.choice(len(non_edges), size=n_neg, replace=False)
        negatives = [non_edges[i] for i in sorted(idx)]
    else:
        negatives = []
    labeled = [(u, v, 1) for u, v in positives] + [(u, v, 0) for u, v in negatives]
    order = rng.permutation(len(labeled))
    labeled = [labeled[i] for i in order]
    n_val = int(round(val_fraction * len(labeled)))
    return LabeledPairSet(
        train=labeled[n_val:], val=labeled[:n_val], no_negatives=not negatives
    )


def train(model, pairs, features, cfg, rng):
    """Minibatch Adam training on binary cross-entropy.

    Warm-starts from the model's current weights; the optimizer state is
    kept on the model so repeated calls continue smoothly.  Deterministic
    given rng (fixed shuffle order).
    """
    if not pairs.train:
        raise ValueError("empty training pair set")
    if model._opt is None:
        model._opt = _Adam(model.params, cfg)
    else:
        model._opt.cfg = cfg

    dense = features.dense()

    def batch_arrays(chunk):
        xu = dense[[u for u, _, _ in chunk]]
        xv = dense[[v for _, v, _ in chunk]]
        y = np.array([float(t) for _, _, t in chunk])
        return xu, xv, y

    for _ in range(cfg.epochs):
        order = rng.permutation(len(pairs.train))
        for lo in range(0, len(order), cfg.batch_size):
            chunk = [pairs.train[i] for i in order[lo : lo + cfg.batch_size]]
            xu, xv, y = batch_arrays(chunk)
            loss, grads = model.loss_and_grads(xu, xv, y)
            if not np.isfinite(loss):
                raise TrainingDivergedError(
                    f"non-finite loss {loss} at step {model._opt.t}"
                )
            model._opt.step(model.params, grads)

    metrics = {}
    if pairs.val:
        xu, xv, y = batch_arrays(pairs.val)
        theta = model.forward(xu, xv)
        metrics["val_loss"] = bce_loss(theta, y)
        metrics["val_auc"] = auc_score(y, theta)
    return metrics


def predict_theta(model, xu, xv):
    """Edge probability for one pair; symmetric under argument swap."""
    xu = np.asarray(xu, dtype=float)
    xv = np.asarray(xv, dtype=float)
    if xu.shape != (model.d,) or xv.shape != (model.d,):
        raise ValueError(f"feature vectors must have length {model.d}")
    return float(model.forward(xu[None, :], xv[None, :])[0])


def infer_all(model, state, features, n, cap=None):
    """Edge probabilities for every uncertain pair.

    Embeddings are computed once per node, so scoring all pairs is a
    single batched pass.  With `cap` set, only the cap highest-probability
    entries are kept.  A None model (fallback mode) yields an empty map.
    """
    if model is None:
        return {}
    pairs = sorted(enumerate_uncertain_edges(state, n))
    if not pairs:
        return {}
    if isinstance(model, SiameseModel):
        emb = model.embed(features.dense())
        scored = emb * model.params["w"][None, :]
        uu = np.array([u for u, _ in pairs])
        vv = np.array([v for _, v in pairs])
        z = np.einsum("ij,ij->i", scored[uu], emb[vv]) + model.params["b"][0]
        theta = sigmoid(z)
    else:
        dense = features.dense()
        uu = np.array([u for u, _ in pairs])
        vv = np.array([v for _, v in pairs])
        theta = model.forward(dense[uu], dense[vv])
    entries = dict(zip(pairs, theta.astype(float)))
    if cap is not None and len(entries) > cap:
        ranked = sorted(entries.items(), key=lambda kv: (-kv[1], kv[0]))
        entries = dict(ranked[:cap])
    return entries
