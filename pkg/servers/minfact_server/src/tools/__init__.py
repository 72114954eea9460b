from .enumerate_objects import enumerate_objects
from .levy_path import levy_path
from .offspring_params import offspring_params
from .partial_partition import partial_partition
from .render_lamination import render_lamination
from .sample_factorization import sample_factorization
from .sample_tree import sample_tree
from .stats_summary import stats_summary
from .verify_suite import verify_suite

__all__ = [
    "enumerate_objects",
    "levy_path",
    "offspring_params",
    "partial_partition",
    "render_lamination",
    "sample_factorization",
    "sample_tree",
    "stats_summary",
    "verify_suite",
]
