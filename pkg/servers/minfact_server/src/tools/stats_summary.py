from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional

import numpy as np

from shared.config import get_settings
from shared.utils.logger import get_logger
from shared.utils.rng import RngStream

from servers.minfact_server.src.services.dist_engine import borel_pmf
from servers.minfact_server.src.services.lamination import (
    hausdorff,
    lam_of_forest,
    lam_of_partition,
    longest_chord,
)
from servers.minfact_server.src.services.samplers import (
    first_gap_law,
    forest_edges,
    partial_product_partition,
    sample_min_factorization,
)
from servers.minfact_server.src.tools.common import error_result, resolve_k

logger = get_logger(__name__)

SAMPLE_COLUMNS = {
    "sample": "index of the draw (its random substream)",
    "longest_chord_partition": "longest chord of the partition lamination after K factors",
    "longest_chord_forest": "longest chord of the forest lamination after K factors",
    "hausdorff": "Hausdorff distance between the two laminations (unit circle included)",
    "first_gap": "b - a for the first factor (a, b)",
    "first_position": "a / n for the first factor (a, b)",
}
GAP_COLUMNS = {
    "gap": "value i of b - a",
    "count": "draws with first gap i; the column sums to the number of draws",
    "empirical": "count / draws",
    "exact": "exact probability at this n",
    "borel": "limit probability i^(i-2) e^(-i) / (i-1)!",
}


def _one_draw(index: int, stream: RngStream, n: int, k: int, delta: float) -> Dict[str, Any]:
    f = sample_min_factorization(n, stream)
    forest = lam_of_forest(n, forest_edges(f, k))
    polygons = lam_of_partition(partial_product_partition(f, k))
    first = f.factors[0]
    return {
        "sample": index,
        "longest_chord_partition": longest_chord(polygons),
        "longest_chord_forest": longest_chord(forest),
        "hausdorff": hausdorff(forest, polygons, delta),
        "first_gap": first.gap,
        "first_position": first.a / n,
    }


def gap_histogram(gaps: List[int], n: int) -> List[Dict[str, Any]]:
    counts = np.bincount(np.asarray(gaps, dtype=np.int64), minlength=11)
    exact = first_gap_law(n)
    rows = []
    for i in range(1, len(counts)):
        if i > n - 1:
            break
        rows.append({
            "gap": i,
            "count": int(counts[i]),
            "empirical": float(counts[i]) / len(gaps),
            "exact": float(exact[i - 1]),
            "borel": float(borel_pmf(i)),
        })
    return rows


async def stats_summary(
    n: int,
    seed: int,
    samples: int = 100,
    K: Optional[int] = None,
    c: Optional[float] = None,
    threads: Optional[int] = None,
) -> Dict[str, Any]:
    """
    Monte-Carlo summaries over independent uniform factorizations.

    Args:
        n: Size of the cycle (at least 2)
        seed: Seed of the parent stream; draw i uses substream i
        samples: Number of factorizations
        K: Number of leading factors for the lamination columns
        c: Alternative to K, meaning K = floor(c * sqrt(n))
        threads: Worker threads (default MINFACT_THREADS)

    Returns:
        Dictionary with one row per draw, the first-gap histogram against the exact and
        Borel laws, quantiles of the first position and the column descriptions
    """
    try:
        k = resolve_k(n, K, c if K is not None or c is not None else 1.0)
        settings = get_settings()
        streams = RngStream(seed).spawn(samples)
        with ThreadPoolExecutor(max_workers=threads or settings.threads) as pool:
            rows = list(pool.map(
                lambda item: _one_draw(item[0], item[1], n, k, settings.hausdorff_delta),
                enumerate(streams),
            ))
        positions = np.array([r["first_position"] for r in rows])
        logger.info("stats_summary", n=n, K=k, samples=samples, seed=seed)
        return {
            "n": n,
            "K": k,
            "seed": seed,
            "samples": rows,
            "gap_histogram": gap_histogram([r["first_gap"] for r in rows], n),
            "first_position_quantiles": {
                str(q): float(np.quantile(positions, q)) for q in (0.1, 0.25, 0.5, 0.75, 0.9)
            },
            "columns": {"samples": SAMPLE_COLUMNS, "gap_histogram": GAP_COLUMNS},
        }
    except Exception as e:
        return error_result("stats_summary", e, n=n, seed=seed)
