"""Walk encodings of two-type trees: the (H, W) offspring code, the (H, B) paths,
cyclic shifts and the discrete Vervaat transform."""
from typing import List, Sequence, Tuple

import numpy as np

from shared.types import BLACK, BiTypeTree, BridgeConditionError, PathPair, PhiCode, PlaneTree
from shared.utils.logger import get_logger

logger = get_logger(__name__)


def encode_phi(t: BiTypeTree) -> PhiCode:
    """Offspring counts of the root colour in preorder, then of the other colour by
    (rank of parent, preorder)."""
    primary = t.black_vertices if t.root_color == BLACK else t.white_vertices
    children = t.children
    H = [len(children[v]) for v in primary]
    W = [len(children[w]) for v in primary for w in children[v]]
    return PhiCode(tuple(H), tuple(W))


def decode_phi(code: PhiCode, root_color: str = BLACK) -> BiTypeTree:
    """Rebuild the unique tree with the given code; the code is validated first."""
    code.validate()
    H, W = code.H, code.W
    offsets = np.concatenate(([0], np.cumsum(H, dtype=np.int64)))
    parents: List[int] = []
    next_primary = 0
    # ("P", parent) creates the next primary vertex in preorder, ("S", j, parent)
    # creates the secondary vertex of rank j
    stack: List[Tuple] = [("P", -1)]
    while stack:
        item = stack.pop()
        vertex = len(parents)
        parents.append(item[-1])
        if item[0] == "P":
            index = next_primary
            next_primary += 1
            for j in range(int(offsets[index + 1]) - 1, int(offsets[index]) - 1, -1):
                stack.append(("S", j, vertex))
        else:
            stack.extend(("P", vertex) for _ in range(W[item[1]]))
    return BiTypeTree(tuple(parents), root_color=root_color)


def hb_paths(t: BiTypeTree) -> PathPair:
    """Per black vertex: (number of white children, number of black grandchildren)."""
    children = t.children
    pairs = []
    for v in t.black_vertices:
        whites = children[v]
        pairs.append((len(whites), sum(len(children[w]) for w in whites)))
    return PathPair(tuple(pairs))


def cyclic_shift(p: PathPair, i: int) -> PathPair:
    """Rotate the pairs left by i (taken modulo the length)."""
    m = len(p)
    if m == 0:
        return p
    i %= m
    return PathPair(p.pairs[i:] + p.pairs[:i])


def first_minimum_index(b: Sequence[int]) -> int:
    """i* in 1..m: first position where b_1 + ... + b_j - j reaches its minimum."""
    bar = np.cumsum(np.asarray(b, dtype=np.int64)) - np.arange(1, len(b) + 1, dtype=np.int64)
    return int(np.argmin(bar)) + 1


def vervaat_discrete(p: PathPair) -> PathPair:
    """Shift a bridge ending at -1 into the unique excursion among its rotations."""
    m = len(p)
    if m == 0 or int(p.b.sum()) - m != -1:
        raise BridgeConditionError(
            f"bridge must satisfy sum(b) - m = -1, got {int(p.b.sum()) - m if m else 'empty'}"
        )
    return cyclic_shift(p, first_minimum_index(p.b))


def good_cyclic_shifts(increments: Sequence[int], drop: int) -> List[int]:
    """Shifts after which a walk with the given increments (sum -drop, all >= -1)
    first reaches -drop at its last step.

    The cyclic lemma says there are exactly ``drop`` of them.
    """
    x = np.asarray(increments, dtype=np.int64)
    m = len(x)
    if m == 0 or int(x.sum()) != -drop:
        raise BridgeConditionError(f"walk must end at -{drop}, ends at {int(x.sum()) if m else 0}")
    s = np.concatenate(([0], np.cumsum(x)))
    # minimum over [0, i) and over (i, m), the final value itself excluded
    big = np.iinfo(np.int64).max
    before = np.minimum.accumulate(np.concatenate(([big], s[:-1])))
    after = np.concatenate((np.minimum.accumulate(s[:m][::-1])[::-1], [big]))
    shifts = []
    for i in range(m):
        if s[i] < before[i] and s[i] - drop < after[i + 1]:
            shifts.append(i)
    return shifts


def lukasiewicz_path(t: PlaneTree) -> List[int]:
    """Partial sums of (children - 1) in preorder, for any plane tree."""
    return t.lukasiewicz_path()


def lukasiewicz_excursion_ok(path: Sequence[int]) -> bool:
    return len(path) > 0 and path[-1] == -1 and all(v >= 0 for v in path[:-1])


def paths_of_walk(h: Sequence[int], b: Sequence[int]) -> PathPair:
    return PathPair(tuple(zip((int(v) for v in h), (int(v) for v in b))))


def describe(p: PathPair) -> dict:
    logger.debug("path_summary", length=len(p), end=int(p.b_bar[-1]) if len(p) else None)
    return {
        "length": len(p),
        "h_bar": p.h_bar.tolist(),
        "b_bar": p.b_bar.tolist(),
        "excursion": p.is_excursion(),
    }


__all__ = [
    "cyclic_shift",
    "decode_phi",
    "describe",
    "encode_phi",
    "first_minimum_index",
    "good_cyclic_shifts",
    "hb_paths",
    "lukasiewicz_excursion_ok",
    "lukasiewicz_path",
    "paths_of_walk",
    "vervaat_discrete",
]
