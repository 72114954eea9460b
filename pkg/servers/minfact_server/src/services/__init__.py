from .dist_engine import borel_pmf, eval_F, params_for, solve_params, walk_pmf
from .lamination import hausdorff, lam_of_excursion, lam_of_forest, lam_of_partition
from .levy_sim import brownian_excursion_discrete, levy_bridge, levy_excursion, levy_process
from .ncp import enumerate_ncp, kreweras
from .oracle import enumerate_factorizations, enumerate_trees, exact_law_partial_product
from .path_codec import decode_phi, encode_phi, hb_paths
from .render_svg import render, render_frames, write_svg
from .samplers import (
    partial_product_partition,
    sample_conditioned_tree,
    sample_min_factorization,
    sample_partial_partition,
)
from .tree_duality import dual_tree, partition_of_tree
from .verification import run_suite, suite_names

__all__ = [
    "borel_pmf",
    "brownian_excursion_discrete",
    "decode_phi",
    "dual_tree",
    "encode_phi",
    "enumerate_factorizations",
    "enumerate_ncp",
    "enumerate_trees",
    "eval_F",
    "exact_law_partial_product",
    "hausdorff",
    "hb_paths",
    "kreweras",
    "lam_of_excursion",
    "lam_of_forest",
    "lam_of_partition",
    "levy_bridge",
    "levy_excursion",
    "levy_process",
    "params_for",
    "partial_product_partition",
    "partition_of_tree",
    "render",
    "render_frames",
    "run_suite",
    "sample_conditioned_tree",
    "sample_min_factorization",
    "sample_partial_partition",
    "solve_params",
    "suite_names",
    "walk_pmf",
    "write_svg",
]
