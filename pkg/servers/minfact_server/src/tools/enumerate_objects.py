from typing import Any, Dict, Optional

from shared.types import BLACK, RangeError

from servers.minfact_server.src.services.ncp import enumerate_ncp
from servers.minfact_server.src.services.oracle import enumerate_factorizations, enumerate_trees
from servers.minfact_server.src.tools.common import error_result

KINDS = ("factorizations", "ncp", "trees")


async def enumerate_objects(
    kind: str,
    n: Optional[int] = None,
    n_black_max: Optional[int] = None,
    n_white_max: Optional[int] = None,
    root_color: str = BLACK,
    dump: bool = False,
) -> Dict[str, Any]:
    """
    Count, and optionally list, small combinatorial objects.

    Args:
        kind: "factorizations" (minimal factorizations of the n-cycle, n <= 8), "ncp"
            (non-crossing partitions of [n]) or "trees" (alternating trees in bounds)
        n: Size for factorizations and partitions
        n_black_max: Bound on black vertices for trees
        n_white_max: Bound on white vertices for trees
        root_color: Root colour for trees
        dump: Include the objects themselves

    Returns:
        Dictionary with the count and, with dump, the items
    """
    try:
        if kind == "factorizations":
            items = [f.to_dict() for f in enumerate_factorizations(_need(n, "n"))]
        elif kind == "ncp":
            items = [p.to_dict() for p in enumerate_ncp(_need(n, "n"))]
        elif kind == "trees":
            trees = enumerate_trees(_need(n_black_max, "n_black_max"), _need(n_white_max, "n_white_max"),
                                    root_color)
            items = [t.to_dict() for t in trees]
        else:
            raise RangeError(f"unknown kind {kind!r}; choose from {', '.join(KINDS)}")
        result: Dict[str, Any] = {"kind": kind, "count": len(items)}
        if dump:
            result["items"] = items
        return result
    except Exception as e:
        return error_result("enumerate_objects", e, kind=kind)


def _need(value: Optional[int], name: str) -> int:
    if value is None:
        raise RangeError(f"{name} is required")
    return value
