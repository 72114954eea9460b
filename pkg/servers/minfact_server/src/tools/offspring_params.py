from typing import Any, Dict, Optional

from servers.minfact_server.src.services.dist_engine import (
    borel_pmf,
    eval_F,
    params_closed_form,
    params_for,
    solve_params,
)
from servers.minfact_server.src.tools.common import error_result, resolve_k


async def offspring_params(
    n: Optional[int] = None,
    K: Optional[int] = None,
    c: Optional[float] = None,
    mean: Optional[float] = None,
) -> Dict[str, Any]:
    """
    Solve for the offspring laws mu(i) = a b^i (i+1)^(i-1) / i!.

    Args:
        n: Size; with K (or c) gives the black and white laws of that conditioning
        K: Number of factors
        c: Alternative to K, meaning K = floor(c * sqrt(n))
        mean: Solve for a single law with this mean instead

    Returns:
        Dictionary with a, b, mean and variance of each law and the series evaluation
        at b
    """
    try:
        if mean is not None:
            params = solve_params(mean)
            ev = eval_F(params.b)
            return {
                "mean": mean,
                "params": params.to_dict(),
                "closed_form": params_closed_form(mean).to_dict(),
                "series": {"value": ev.value, "terms": ev.terms, "tail_bound": ev.tail_bound,
                           "method": ev.method},
            }
        if n is None:
            raise TypeError("give either mean or n with K or c")
        k = resolve_k(n, K, c)
        black, white = params_for(n, k)
        return {
            "n": n,
            "K": k,
            "black": black.to_dict(),
            "white": white.to_dict(),
            "borel": [float(borel_pmf(i)) for i in range(1, 11)],
        }
    except Exception as e:
        return error_result("offspring_params", e, n=n, mean=mean)
