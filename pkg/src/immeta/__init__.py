"""Influence maximization on hidden networks explored via metadata-guided
node queries."""

from .graph import FeatureMatrix, UndirectedGraph, WeightedDigraph, bfs_geodesics
from .oracle import HiddenGraphOracle, ObservedState, known_non_edges
from .inference import (LabeledPairSet, LogisticPairModel, SiameseModel,
                        TrainConfig, auc_score, build_training_pairs,
                        enumerate_uncertain_edges, infer_all, predict_theta,
                        train)
from .reinforce import (DiffusionConfig, ReinforcedGraph, assemble_adjacency,
                        assign_probabilities, build_reinforced, prune_confident)
from .ranking import (ExplorationExhausted, anchor_seeds, baseline_select,
                      rank_degree_ablation, rank_nodes, residual_degree,
                      select_query_node)
from .diffusion import (ExactSpreadEvaluator, LiveEdgeEvaluator, SpreadEstimate,
                        degree_discount, estimate_spread, exact_spread,
                        modified_greedy, naive_greedy, simulate_cascade)
from .data_io import (DatasetBundle, ExperimentRecord, gen_synthetic_homophily,
                      load_edge_list, load_features, mask_features,
                      read_records, write_records)
from .pipeline import (RunConfig, RunOutcome, derive_trial_seed, run_im_meta,
                       run_baseline, run_method, run_suite, run_trial,
                       run_upper)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
