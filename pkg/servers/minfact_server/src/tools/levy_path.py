from typing import Any, Dict

from shared.types import RangeError
from shared.types.paths import uniform_grid
from shared.utils.rng import RngStream

from servers.minfact_server.src.services.lamination import lam_of_excursion, longest_chord
from servers.minfact_server.src.services.levy_sim import (
    brownian_excursion_discrete,
    levy_bridge,
    levy_excursion,
    levy_process,
)
from servers.minfact_server.src.tools.common import error_result

KINDS = ("process", "bridge", "excursion", "brownian")


async def levy_path(
    kind: str,
    seed: int,
    c: float = 1.0,
    points: int = 1001,
    mode: str = "discrete",
    n: int = 10_000,
    root_shifted: bool = False,
    with_lamination: bool = False,
) -> Dict[str, Any]:
    """
    Sample a path of the Levy process X, its bridge or excursion, or a Brownian excursion.

    Args:
        kind: One of "process", "bridge", "excursion", "brownian"
        seed: Seed of the random stream
        c: Parameter of X
        points: Number of grid points on [0, 1]
        mode: "discrete" rescales a conditioned walk of size n, "rejection" samples the
            continuum grid skeleton
        n: Size of the discrete object behind the path
        root_shifted: For discrete excursions, read the walk off a root-shifted tree
        with_lamination: Also return the lamination coded by the (excursion) path

    Returns:
        Dictionary with (time, value) rows and optionally the lamination
    """
    try:
        rng = RngStream(seed)
        if kind == "brownian":
            path = brownian_excursion_discrete(n, rng)
        else:
            grid = uniform_grid(points)
            if kind == "process":
                path = levy_process(grid, c, rng)
            elif kind == "bridge":
                path = levy_bridge(grid, c, rng, mode=mode, n=n)
            elif kind == "excursion":
                path = levy_excursion(grid, c, rng, mode=mode, n=n, root_shifted=root_shifted)
            else:
                raise RangeError(f"unknown path kind {kind!r}; choose from {', '.join(KINDS)}")
        result: Dict[str, Any] = {
            "kind": kind,
            "seed": seed,
            "c": c,
            "mode": mode,
            "cadlag": path.cadlag,
            "rows": [[t, v] for t, v in path.to_rows()],
        }
        if with_lamination:
            if kind in ("process", "bridge"):
                raise RangeError("only excursions code a lamination")
            lamination = lam_of_excursion(path, "cadlag" if path.cadlag else "continuous")
            result["lamination"] = lamination.to_dict()
            result["longest_chord"] = longest_chord(lamination)
        return result
    except Exception as e:
        return error_result("levy_path", e, kind=kind, seed=seed)
