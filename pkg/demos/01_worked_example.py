"""Reinforced-graph construction on the two-edge worked example.

One observed edge (v2-v1) and one inferred edge (v4-v1, theta = 0.6):
prints the estimated degree of v1 and the diffusion probabilities every
arc receives under both cascade models.
"""
import sys

from immeta import DiffusionConfig, ObservedState, build_reinforced

state = ObservedState(
    nodes=frozenset({0, 1}), edges=frozenset({(0, 1)}),
    queried=frozenset(), step=0,
)
theta = {(0, 3): 0.6}  # inferred edge v4-v1

for model in ("wc", "ic"):
    rg = build_reinforced(state, theta, 4, eps=0.5,
                          config=DiffusionConfig(model=model))
    print(f"--- {model.upper()} ---")
    print(f"estimated degree of v1: {rg.d_hat[0]}")
    rg.dump_arcs(sys.stdout)
