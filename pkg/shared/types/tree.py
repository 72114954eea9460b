from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, List, Sequence, Tuple

from .errors import RangeError

TREE_SCHEMA = "minfact.tree/1"

BLACK = "black"
WHITE = "white"


@dataclass(frozen=True)
class PlaneTree:
    """A rooted plane tree stored as a depth-first (preorder) parent array.

    ``parents[0] == -1`` is the root; child order is the order of appearance.
    """
    parents: Tuple[int, ...]

    def __post_init__(self) -> None:
        parents = tuple(int(p) for p in self.parents)
        object.__setattr__(self, "parents", parents)
        if not parents or parents[0] != -1:
            raise RangeError("parent array must start with the root marker -1")
        # each vertex must hang off the current rightmost branch
        branch: List[int] = [0]
        for v in range(1, len(parents)):
            p = parents[v]
            while branch and branch[-1] != p:
                branch.pop()
            if not branch:
                raise RangeError(f"vertex {v} has parent {p}, not on the rightmost branch")
            branch.append(v)

    def __len__(self) -> int:
        return len(self.parents)

    @property
    def size(self) -> int:
        return len(self.parents)

    @property
    def edge_count(self) -> int:
        return len(self.parents) - 1

    @cached_property
    def children(self) -> Tuple[Tuple[int, ...], ...]:
        out: List[List[int]] = [[] for _ in self.parents]
        for v, p in enumerate(self.parents):
            if p >= 0:
                out[p].append(v)
        return tuple(tuple(c) for c in out)

    @cached_property
    def depth(self) -> Tuple[int, ...]:
        out = [0] * len(self.parents)
        for v in range(1, len(self.parents)):
            out[v] = out[self.parents[v]] + 1
        return tuple(out)

    @cached_property
    def descendants(self) -> Tuple[int, ...]:
        """Number of strict descendants of each vertex."""
        out = [0] * len(self.parents)
        for v in range(len(self.parents) - 1, 0, -1):
            out[self.parents[v]] += out[v] + 1
        return tuple(out)

    def child_counts(self) -> List[int]:
        return [len(c) for c in self.children]

    def lukasiewicz_path(self) -> List[int]:
        """Partial sums of (children - 1) in preorder; ends at -1."""
        path: List[int] = []
        total = 0
        for c in self.children:
            total += len(c) - 1
            path.append(total)
        return path

    @classmethod
    def from_child_counts(cls, counts: Sequence[int]) -> "PlaneTree":
        """Rebuild a tree from its preorder child counts."""
        parents = [-1]
        pending: List[List[int]] = [[0, int(counts[0])]] if counts else []
        for v in range(1, len(counts)):
            while pending and pending[-1][1] == 0:
                pending.pop()
            if not pending:
                raise RangeError("child counts describe a forest, not a tree")
            pending[-1][1] -= 1
            parents.append(pending[-1][0])
            pending.append([v, int(counts[v])])
        if any(slot[1] for slot in pending):
            raise RangeError("child counts leave open slots")
        return cls(tuple(parents))

    def to_dict(self) -> Dict[str, Any]:
        return {"schema": TREE_SCHEMA, "parents": list(self.parents), "order": "depth-first"}


@dataclass(frozen=True)
class BiTypeTree(PlaneTree):
    """An alternating two-type plane tree: colours switch at every generation.

    The root is black unless ``root_color`` says otherwise (white roots only occur
    for the pieces of a forest).
    """
    root_color: str = BLACK

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.root_color not in (BLACK, WHITE):
            raise RangeError(f"unknown root colour {self.root_color!r}")

    def color(self, v: int) -> str:
        same = self.depth[v] % 2 == 0
        if self.root_color == BLACK:
            return BLACK if same else WHITE
        return WHITE if same else BLACK

    def is_black(self, v: int) -> bool:
        return self.color(v) == BLACK

    @cached_property
    def black_vertices(self) -> Tuple[int, ...]:
        """Black vertices in lexicographic (preorder) order."""
        return tuple(v for v in range(len(self.parents)) if self.is_black(v))

    @cached_property
    def white_vertices(self) -> Tuple[int, ...]:
        return tuple(v for v in range(len(self.parents)) if not self.is_black(v))

    @cached_property
    def black_rank(self) -> Dict[int, int]:
        return {v: i for i, v in enumerate(self.black_vertices)}

    @property
    def black_count(self) -> int:
        return len(self.black_vertices)

    @property
    def white_count(self) -> int:
        return len(self.white_vertices)

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        if self.root_color != BLACK:
            data["root"] = self.root_color
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BiTypeTree":
        return cls(tuple(data["parents"]), root_color=data.get("root", BLACK))


@dataclass(frozen=True)
class CornerLabeling:
    """Labels 1..n of the black corners, grouped by black vertex in contour order.

    The root's final corner carries the label n.
    """
    n: int
    labels: Dict[int, Tuple[int, ...]]

    def blocks(self) -> List[Tuple[int, ...]]:
        return [tuple(sorted(ls)) for ls in self.labels.values() if ls]


@dataclass(frozen=True)
class BlockLabelBounds:
    """Corner arithmetic of the i-th black vertex.

    ``x`` and ``y`` are its first and last corner labels, ``ell`` counts the corners of
    strict black ancestors branching on the right (label greater than ``x``),
    ``n_black`` its black descendants and ``n_desc`` all of its descendants.
    """
    i: int
    x: int
    y: int
    ell: int
    n_black: int
    n_desc: int
    children_before: int

    @property
    def x_formula(self) -> int:
        return self.i + self.children_before - self.ell
