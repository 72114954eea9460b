from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import PhiCodeError, RangeError

PATH_SCHEMA = "minfact.paths/1"


@dataclass(frozen=True)
class PathPair:
    """Per-black-vertex pairs (h_i, b_i) and their prefix sums.

    ``h_bar[i-1] = h_1 + ... + h_i`` and ``b_bar[i-1] = b_1 + ... + b_i - i``.
    """
    pairs: Tuple[Tuple[int, int], ...]

    def __post_init__(self) -> None:
        pairs = tuple((int(h), int(b)) for h, b in self.pairs)
        if any(h < 0 or b < 0 for h, b in pairs):
            raise RangeError("path increments must be non-negative")
        object.__setattr__(self, "pairs", pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    @cached_property
    def h(self) -> np.ndarray:
        return np.array([p[0] for p in self.pairs], dtype=np.int64)

    @cached_property
    def b(self) -> np.ndarray:
        return np.array([p[1] for p in self.pairs], dtype=np.int64)

    @cached_property
    def h_bar(self) -> np.ndarray:
        return np.cumsum(self.h, dtype=np.int64)

    @cached_property
    def b_bar(self) -> np.ndarray:
        return np.cumsum(self.b, dtype=np.int64) - np.arange(1, len(self.pairs) + 1, dtype=np.int64)

    def is_excursion(self) -> bool:
        bar = self.b_bar
        return len(bar) > 0 and bar[-1] == -1 and bool(np.all(bar[:-1] >= 0))

    def to_rows(self) -> List[Tuple[int, int, int]]:
        """(i, H-bar_i, B-bar_i) rows for CSV output."""
        return [(i + 1, int(h), int(b)) for i, (h, b) in enumerate(zip(self.h_bar, self.b_bar))]


@dataclass(frozen=True)
class PhiCode:
    """Offspring counts of a two-type tree.

    ``H`` lists the black children counts in lexicographic order and ``W`` the
    white children counts ordered by the rank of their black parent, then
    lexicographically. For a white-rooted tree
    the same code is read with the colours swapped.
    """
    H: Tuple[int, ...]
    W: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "H", tuple(int(x) for x in self.H))
        object.__setattr__(self, "W", tuple(int(x) for x in self.W))
        if any(x < 0 for x in self.H + self.W):
            raise PhiCodeError("nonnegative", "offspring counts must be non-negative")

    def violation(self) -> Optional[Tuple[str, str]]:
        """Name the first failed membership condition, or None."""
        H, W = self.H, self.W
        if not H:
            return ("nonempty", "H must list at least one black vertex")
        if sum(H) != len(W):
            return ("white-total", f"sum(H)={sum(H)} but |W|={len(W)}")
        if sum(W) != len(H) - 1:
            return ("black-total", f"sum(W)={sum(W)} but |H|-1={len(H) - 1}")
        # black vertex i (0-based) must have been created by one of the
        # white vertices belonging to black vertices 0..i-1
        h_prefix = 0
        w_cum = np.concatenate(([0], np.cumsum(W, dtype=np.int64)))
        for i in range(1, len(H)):
            h_prefix += H[i - 1]
            created = int(w_cum[min(h_prefix, len(W))])
            if created < i:
                return (
                    "prefix-domination",
                    f"black vertex {i} is not reachable: only {created} black children "
                    f"among the first {h_prefix} white vertices",
                )
        return None

    def validate(self) -> None:
        failure = self.violation()
        if failure is not None:
            raise PhiCodeError(*failure)

    def to_dict(self) -> Dict[str, Any]:
        return {"schema": PATH_SCHEMA, "H": list(self.H), "W": list(self.W)}


@dataclass(frozen=True, eq=False)
class SampledPath:
    """A real-valued path on a grid of [0, 1], read as a cadlag step function.

    ``lattice`` keeps the integer walk when the path is a rescaled discrete object,
    ``tree`` the source tree when one exists.
    """
    grid: np.ndarray
    values: np.ndarray
    cadlag: bool = True
    lattice: Optional[Tuple[int, ...]] = None
    tree: Optional[Any] = field(default=None, repr=False)

    def __post_init__(self) -> None:
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        if grid.shape != values.shape or grid.ndim != 1 or len(grid) < 1:
            raise RangeError("grid and values must be one-dimensional and of equal length")
        if len(grid) > 1 and not np.all(np.diff(grid) > 0):
            raise RangeError("grid must be strictly increasing")
        if not np.all(np.isfinite(values)):
            raise RangeError("path values must be finite")

    def __len__(self) -> int:
        return len(self.grid)

    def at(self, u: float) -> float:
        """Step interpolation: the value at the last grid point <= u."""
        index = int(np.searchsorted(self.grid, u, side="right")) - 1
        return float(self.values[max(index, 0)])

    def to_rows(self) -> List[Tuple[float, float]]:
        return [(float(t), float(v)) for t, v in zip(self.grid, self.values)]


@dataclass(frozen=True, order=True)
class ChordRelationPair:
    """Times s < t identified by the lamination relation of a path."""
    s: float
    t: float

    def __post_init__(self) -> None:
        if not self.s < self.t:
            raise RangeError(f"relation pair needs s < t, got ({self.s}, {self.t})")


def uniform_grid(points: int) -> np.ndarray:
    if points < 2:
        raise RangeError("a grid needs at least two points")
    return np.linspace(0.0, 1.0, points)


def as_pairs(h: Sequence[int], b: Sequence[int]) -> PathPair:
    return PathPair(tuple(zip(h, b)))
