from typing import Any, Dict, Optional

from shared.utils.rng import RngStream

from servers.minfact_server.src.services.lamination import lam_of_partition, longest_chord
from servers.minfact_server.src.services.ncp import kreweras
from servers.minfact_server.src.services.samplers import sample_partial_partition
from servers.minfact_server.src.services.tree_duality import dual_tree
from servers.minfact_server.src.tools.common import error_result, resolve_k


async def partial_partition(
    n: int,
    seed: int,
    K: Optional[int] = None,
    c: Optional[float] = None,
    route: str = "factorization",
    with_tree: bool = False,
) -> Dict[str, Any]:
    """
    Sample the partition of the product of the first K factors.

    Args:
        n: Size of the cycle
        seed: Seed of the random stream
        K: Number of factors
        c: Alternative to K, meaning K = floor(c * sqrt(n))
        route: "factorization" samples a whole factorization, "tree" a root-shifted tree
        with_tree: Also return the dual two-type tree

    Returns:
        Dictionary with the partition, its Kreweras complement and its lamination
    """
    try:
        k = resolve_k(n, K, c)
        partition = sample_partial_partition(n, k, RngStream(seed), route=route)
        lamination = lam_of_partition(partition)
        result: Dict[str, Any] = {
            "seed": seed,
            "n": n,
            "K": k,
            "route": route,
            "partition": partition.to_dict(),
            "kreweras": kreweras(partition).to_dict(),
            "lamination": lamination.to_dict(),
            "longest_chord": longest_chord(lamination),
        }
        if with_tree:
            result["tree"] = dual_tree(partition).to_dict()
        return result
    except Exception as e:
        return error_result("partial_partition", e, seed=seed, n=n)
