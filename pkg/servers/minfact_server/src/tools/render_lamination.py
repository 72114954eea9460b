from pathlib import Path
from typing import Any, Dict, Optional

from shared.config import FrameSweep, get_settings
from shared.types import Factorization, Lamination
from shared.utils.rng import RngStream

from servers.minfact_server.src.services.render_svg import (
    prefix_laminations,
    render_frames,
    write_svg,
)
from servers.minfact_server.src.services.samplers import sample_min_factorization
from servers.minfact_server.src.tools.common import error_result, resolve_k


async def render_lamination(
    output: str,
    n: Optional[int] = None,
    seed: Optional[int] = None,
    K: Optional[int] = None,
    c: Optional[float] = None,
    panels: str = "forest",
    factorization: Optional[Dict[str, Any]] = None,
    lamination: Optional[Dict[str, Any]] = None,
    frames: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    """
    Draw chord diagrams as SVG.

    Args:
        output: File to write, or directory for frames (relative paths resolve
            against MINFACT_OUTPUT_DIR)
        n: Size of a factorization to sample when none is given
        seed: Seed for that sample
        K: Number of leading factors to draw
        c: Alternative to K, meaning K = floor(c * sqrt(n))
        panels: "forest", "partition" or "both" (side by side)
        factorization: A factorization document to draw instead of sampling
        lamination: A lamination document to draw as is
        frames: {"c_min", "c_max", "count"}: one frame per c with k = floor(c sqrt(n))

    Returns:
        Dictionary with the written paths
    """
    try:
        target = Path(output)
        if not target.is_absolute():
            target = get_settings().output_dir / target
        if lamination is not None:
            return {"paths": [str(write_svg([Lamination.from_dict(lamination)], target))]}
        if factorization is not None:
            f = Factorization.from_dict(factorization)
        else:
            if n is None or seed is None:
                raise TypeError("give a factorization, a lamination, or n and seed")
            f = sample_min_factorization(n, RngStream(seed))
        if frames is not None:
            sweep = FrameSweep(**frames)
            return {"paths": [str(p) for p in render_frames(f, sweep, target, panels)]}
        k = resolve_k(f.n, K, c)
        return {"k": k, "paths": [str(write_svg(prefix_laminations(f, k, panels), target))]}
    except Exception as e:
        return error_result("render_lamination", e, output=output)
