from typing import Any, Dict, Optional

from shared.utils.rng import RngStream

from servers.minfact_server.src.services.path_codec import describe, encode_phi, hb_paths
from servers.minfact_server.src.services.samplers import sample_conditioned_tree
from servers.minfact_server.src.services.tree_duality import partition_of_tree
from servers.minfact_server.src.tools.common import error_result, resolve_k


async def sample_tree(
    n: int,
    seed: int,
    K: Optional[int] = None,
    c: Optional[float] = None,
    root_shifted: bool = False,
) -> Dict[str, Any]:
    """
    Draw the two-type tree conditioned on n-K black and K+1 white vertices.

    Args:
        n: Total size; the tree has n+1 vertices
        seed: Seed of the random stream
        K: Number of white vertices minus one
        c: Alternative to K, meaning K = floor(c * sqrt(n))
        root_shifted: Use the shifted root law, whose trees code partial products

    Returns:
        Dictionary with the tree, its (H, W) code, its (H, B) paths and, for root-shifted
        trees, the coded non-crossing partition
    """
    try:
        k = resolve_k(n, K, c)
        tree = sample_conditioned_tree(n, k, root_shifted, RngStream(seed))
        result: Dict[str, Any] = {
            "seed": seed,
            "n": n,
            "K": k,
            "root_shifted": root_shifted,
            "tree": tree.to_dict(),
            "code": encode_phi(tree).to_dict(),
            "paths": describe(hb_paths(tree)),
        }
        if root_shifted:
            result["partition"] = partition_of_tree(tree).to_dict()
        return result
    except Exception as e:
        return error_result("sample_tree", e, seed=seed, n=n)
