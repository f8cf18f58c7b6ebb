"""Small method-by-budget sweep written to a results CSV.

Produces the same CSV schema the command-line `immeta sweep` emits, which
the plotting package consumes.
"""
import numpy as np

from immeta import RunConfig, gen_synthetic_homophily, run_suite

bundle = gen_synthetic_homophily(
    n=100, d=32, marker_count=5, edge_prob_in=0.3, edge_prob_out=0.02,
    rng=np.random.default_rng(7),
)
cfg = RunConfig(T=5, k=3, mc=2000, selection_mc=500, trials=3, epochs=10, seed=0)
records, failures = run_suite(
    bundle, cfg,
    axes={"method": ["im-meta", "rand", "dfs", "upper"], "T": [5, 10]},
    out_path="sweep_demo.csv", verbose=True,
)
print(f"\nwrote {len(records)} rows to sweep_demo.csv ({failures} failures)")
