"""The dual two-type tree of a non-crossing partition and its corner labelling.

Black vertices are the blocks of the partition, white vertices the blocks of its
Kreweras complement. The tree is rooted at the block containing n, and walking the
contour labels the black corners 1..n so that each black vertex collects exactly the
elements of its block.
"""
from typing import Dict, List, Tuple

from shared.types import (
    BiTypeTree,
    BlockLabelBounds,
    CornerLabeling,
    NonCrossingPartition,
    PlaneTree,
    RangeError,
    SetPartition,
)
from shared.types.partition import canonical_blocks


def dual_tree(p: SetPartition) -> BiTypeTree:
    """Build the dual tree in depth-first order."""
    p = NonCrossingPartition.of(p)
    n = p.n
    owner = p.owner
    blocks = p.blocks
    parents: List[int] = []

    # stack items: ("B", block index, parent) or ("W", lo, hi, parent), where a white
    # vertex stands for the open interval (lo, hi)
    stack: List[Tuple] = [("B", owner[n], -1, True)]
    while stack:
        item = stack.pop()
        vertex = len(parents)
        if item[0] == "B":
            _, index, parent, is_root = item
            parents.append(parent)
            block = blocks[index]
            bounds = ((0,) + block) if is_root else block
            gaps = [(bounds[j], bounds[j + 1]) for j in range(len(bounds) - 1)]
            for lo, hi in reversed(gaps):
                stack.append(("W", lo, hi, vertex))
        else:
            _, lo, hi, parent = item
            parents.append(parent)
            outer: List[int] = []
            x = lo + 1
            while x < hi:
                index = owner[x]
                outer.append(index)
                x = blocks[index][-1] + 1
            for index in reversed(outer):
                stack.append(("B", index, vertex, False))
    return BiTypeTree(tuple(parents))


def contour_sequence(t: PlaneTree) -> List[int]:
    """Depth-first boundary walk: first unvisited child, else back to the parent."""
    children = t.children
    sequence = [0]
    cursor = [0] * len(t.parents)
    v = 0
    while True:
        if cursor[v] < len(children[v]):
            child = children[v][cursor[v]]
            cursor[v] += 1
            v = child
        elif v == 0:
            break
        else:
            v = t.parents[v]
        sequence.append(v)
    return sequence


def corner_labeling(t: BiTypeTree) -> CornerLabeling:
    """Label black corners 1..n along the contour, skipping the root's opening visit."""
    labels: Dict[int, List[int]] = {v: [] for v in t.black_vertices}
    label = 0
    for position, v in enumerate(contour_sequence(t)):
        if position == 0 or not t.is_black(v):
            continue
        label += 1
        labels[v].append(label)
    return CornerLabeling(n=label, labels={v: tuple(ls) for v, ls in labels.items()})


def partition_of_tree(t: BiTypeTree) -> NonCrossingPartition:
    """Inverse of :func:`dual_tree`."""
    if t.root_color != "black":
        raise RangeError("partition_of_tree needs a black root")
    labeling = corner_labeling(t)
    if labeling.n == 0:
        raise RangeError("a single vertex codes no partition; the smallest tree has one edge")
    return NonCrossingPartition(labeling.n, canonical_blocks(labeling.blocks()))


def block_label_bounds(t: BiTypeTree, i: int) -> BlockLabelBounds:
    """First/last corner labels of the i-th black vertex and their decomposition.

    Only non-root black vertices (``i >= 1``) are covered; see :func:`root_label_bounds`.
    """
    blacks = t.black_vertices
    if not 0 < i < len(blacks):
        raise RangeError(f"black index {i} outside [1, {len(blacks) - 1}]")
    labeling = corner_labeling(t)
    v = blacks[i]
    own = labeling.labels[v]
    x, y = own[0], own[-1]

    ell = 0
    ancestor = t.parents[t.parents[v]]
    while ancestor >= 0:
        ell += sum(1 for label in labeling.labels[ancestor] if label > x)
        ancestor = t.parents[t.parents[ancestor]] if ancestor > 0 else -1

    children_before = sum(len(t.children[u]) for u in blacks[:i])
    n_black = sum(
        1 for u in range(v + 1, v + 1 + t.descendants[v]) if t.is_black(u)
    )
    return BlockLabelBounds(
        i=i,
        x=x,
        y=y,
        ell=ell,
        n_black=n_black,
        n_desc=t.descendants[v],
        children_before=children_before,
    )


def root_label_bounds(t: BiTypeTree) -> Tuple[int, int]:
    """(first, last) corner labels of the root; the last one is always n."""
    own = corner_labeling(t).labels[0]
    return own[0], own[-1]


def reduced_black_subtree(t: BiTypeTree) -> PlaneTree:
    """Plane tree on the black vertices, each attached to its black grandparent."""
    rank = t.black_rank
    parents = [-1]
    for v in t.black_vertices[1:]:
        parents.append(rank[t.parents[t.parents[v]]])
    return PlaneTree(tuple(parents))
