from typing import Any, Dict, Optional

from shared.config import RunConfig
from shared.utils.rng import RngStream

from servers.minfact_server.src.services.ncp import kreweras
from servers.minfact_server.src.services.samplers import (
    partial_product_partition,
    sample_min_factorization,
)
from servers.minfact_server.src.tools.common import error_result, resolve_k


async def sample_factorization(
    n: int, seed: int, K: Optional[int] = None, c: Optional[float] = None
) -> Dict[str, Any]:
    """
    Draw a uniform minimal factorization of the n-cycle.

    Args:
        n: Size of the cycle (1, ..., n)
        seed: Seed of the random stream; equal seeds give equal factorizations
        K: Optional number of leading factors whose partial product is also reported
        c: Alternative to K, meaning K = floor(c * sqrt(n))

    Returns:
        Dictionary with the factorization and, when K or c is given, the partition of
        the partial product and its Kreweras complement
    """
    try:
        config = RunConfig.build(seed=seed, n=n, K=K, c=c)
        f = sample_min_factorization(config.require_n(), RngStream(config.require_seed()))
        result: Dict[str, Any] = {"seed": seed, "factorization": f.to_dict()}
        if K is not None or c is not None:
            k = resolve_k(n, K, c)
            partition = partial_product_partition(f, k)
            result["k"] = k
            result["partition"] = partition.to_dict()
            result["kreweras"] = kreweras(partition).to_dict()
        return result
    except Exception as e:
        return error_result("sample_factorization", e, seed=seed, n=n)
