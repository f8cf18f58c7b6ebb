"""Command-line entry points: `immeta run` and `immeta sweep`."""
from __future__ import annotations

import argparse
import sys

import numpy as np

from .data_io import load_edge_list, load_features, gen_synthetic_homophily, DatasetBundle
from .pipeline import METHODS, RunConfig, run_suite


def parse_synthetic_spec(spec):
    """Parse `n=...,d=...,in=...,out=...[,markers=...]` into generator kwargs."""
    out = {}
    for item in spec.split(","):
        if not item:
            continue
        key, _, val = item.partition("=")
        out[key.strip()] = val.strip()
    kwargs = {
        "n": int(out.get("n", 300)),
        "d": int(out.get("d", 64)),
        "marker_count": int(out.get("markers", 8)),
        "edge_prob_in": float(out.get("in", 0.3)),
        "edge_prob_out": float(out.get("out", 0.01)),
    }
    seed = int(out.get("seed", 12345))
    return kwargs, seed


def load_bundle(args):
    if args.dataset:
        graph, _, _ = load_edge_list(args.dataset)
        if not args.features:
            raise SystemExit("--features is required with --dataset")
        features = load_features(args.features, graph.n)
        name = args.dataset
        return DatasetBundle(graph=graph, features=features, name=name)
    kwargs, seed = parse_synthetic_spec(args.synthetic)
    return gen_synthetic_homophily(rng=np.random.default_rng(seed), **kwargs)


def add_common_args(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--dataset", help="edge-list file")
    src.add_argument("--synthetic", help="n=...,d=...,in=...,out=... generator spec")
    p.add_argument("--features", help="feature file (required with --dataset)")
    p.add_argument("--queries", "-T", type=int, default=60, dest="T")
    p.add_argument("--seeds", "-k", type=int, default=5, dest="k")
    p.add_argument("--model", choices=["ic", "wc"], default="ic")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--p", type=float, default=0.1, help="IC diffusion probability")
    p.add_argument("--mc", type=int, default=20000, help="evaluation MC replicates")
    p.add_argument("--selection-mc", type=int, default=None,
                   help="MC replicates inside greedy (defaults to --mc)")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--drop", type=float, default=0.0,
                   help="fraction of node features to mask")
    p.add_argument("--rng-seed", type=int, default=0, dest="seed")
    p.add_argument("--h-cap", type=int, default=None)
    p.add_argument("--epochs", type=int, default=50)
    p.add_argument("--out", default="results.csv")
    p.add_argument("--verbose", action="store_true")


def config_from_args(args, method):
    return RunConfig(
        method=method,
        dataset=args.dataset or "synthetic",
        T=args.T, k=args.k, model=args.model,
        alpha=args.alpha, epsilon=args.epsilon, p=args.p,
        mc=args.mc, selection_mc=args.selection_mc,
        trials=args.trials, drop=args.drop, seed=args.seed,
        h_cap=args.h_cap, epochs=args.epochs,
    )


def parse_sweep_file(path):
    """Axis file: one `name = v1, v2, ...` line per swept axis."""
    axes = {}
    casts = {"method": str, "model": str, "T": int, "k": int,
             "alpha": float, "epsilon": float, "drop": float}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            name, sep, rest = line.partition("=")
            name = name.strip()
            if not sep or name not in casts:
                raise SystemExit(f"{path}:{lineno}: bad sweep line {line!r}")
            axes[name] = [casts[name](tok.strip()) for tok in rest.split(",") if tok.strip()]
    return axes


def main(argv=None):
    parser = argparse.ArgumentParser(prog="immeta")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one method over several trials")
    run_p.add_argument("--method", choices=list(METHODS), default="im-meta")
    add_common_args(run_p)

    sweep_p = sub.add_parser("sweep", help="Cartesian sweep from an axis file")
    sweep_p.add_argument("--config", required=True, help="axis-value file")
    add_common_args(sweep_p)

    args = parser.parse_args(argv)
    bundle = load_bundle(args)

    if args.command == "run":
        cfg = config_from_args(args, args.method)
        records, failures = run_suite(
            bundle, cfg, {"method": [args.method]}, out_path=args.out,
            verbose=args.verbose,
        )
    else:
        axes = parse_sweep_file(args.config)
        cfg = config_from_args(args, "im-meta")
        records, failures = run_suite(
            bundle, cfg, axes, out_path=args.out, verbose=args.verbose
        )
    print(f"wrote {len(records)} records to {args.out} ({failures} failures)")
    return 2 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
