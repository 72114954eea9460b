"""Chord sets of the closed unit disk: the laminations of a partition, of a forest and
of an excursion, with Hausdorff distance and non-crossing checks."""
import math
from typing import Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np
from scipy.spatial import cKDTree

from shared.types import (
    BiTypeTree,
    Chord,
    CrossingChordError,
    Lamination,
    RangeError,
    SampledPath,
    SetPartition,
    Transposition,
)
from shared.types.lamination import Angle
from shared.utils.logger import get_logger

from servers.minfact_server.src.services.levy_sim import (
    chords_from_discrete_path,
    path_relation_pairs,
)
from servers.minfact_server.src.services.tree_duality import corner_labeling

logger = get_logger(__name__)

NEIGHBOURS = 8


def lam_of_partition(p: SetPartition) -> Lamination:
    """Boundary polygons of the blocks; a block's largest and smallest elements are
    consecutive, a 2-block gives one chord and singletons give none."""
    chords: Set[Chord] = set()
    for block in p.blocks:
        if len(block) < 2:
            continue
        for x, y in zip(block, block[1:] + block[:1]):
            chords.add(Chord.between(x, y, p.n))
    return Lamination(p.n, frozenset(chords))


def crossing_pair(chords: Iterable[Chord]) -> Optional[Tuple[Chord, Chord]]:
    """Two chords crossing in the open disk, or None.

    Sorted by left end (longest first on ties), a non-crossing family is laminar: every
    chord either nests in the open chords on the stack or starts after they close.
    """
    ordered = sorted((c for c in chords if not c.is_point), key=lambda c: (c.s, -c.t))
    stack: List[Chord] = []
    for chord in ordered:
        while stack and stack[-1].t <= chord.s:
            stack.pop()
        if stack and chord.t > stack[-1].t and chord.s > stack[-1].s:
            return stack[-1], chord
        stack.append(chord)
    return None


def is_noncrossing(lamination: Lamination) -> bool:
    return crossing_pair(lamination.chords) is None


def lam_of_forest(n: int, edges: Sequence[Transposition]) -> Lamination:
    """One chord per edge; crossing edges mean the input was not a factorization prefix."""
    chords = frozenset(Chord.between(t.a, t.b, n) for t in edges)
    witness = crossing_pair(chords)
    if witness is not None:
        first, second = witness
        raise CrossingChordError(tuple(first.to_list()), tuple(second.to_list()))
    return Lamination(n, chords)


def circle_points(lamination: Lamination) -> Set[Angle]:
    """Endpoint angles, i.e. the intersection of the chord union with the circle."""
    return {angle for chord in lamination.chords for angle in (chord.s, chord.t)}


def longest_chord(lamination: Lamination) -> float:
    return max((c.length() for c in lamination.chords), default=0.0)


def _segments(lamination: Lamination) -> np.ndarray:
    segments = [c.endpoints() for c in lamination.chords if not c.is_point]
    return np.asarray(segments, dtype=float).reshape(-1, 2, 2)


def _sample_segments(segments: np.ndarray, delta: float) -> Tuple[np.ndarray, np.ndarray]:
    """Points every ``delta`` (endpoints included) and the index of their segment."""
    points: List[np.ndarray] = []
    owners: List[np.ndarray] = []
    for index, (p, q) in enumerate(segments):
        steps = max(int(math.ceil(np.linalg.norm(q - p) / delta)), 1)
        u = np.linspace(0.0, 1.0, steps + 1)[:, None]
        points.append(p + u * (q - p))
        owners.append(np.full(steps + 1, index))
    return np.concatenate(points), np.concatenate(owners)


def _point_segment_distance(points: np.ndarray, starts: np.ndarray, ends: np.ndarray) -> np.ndarray:
    d = ends - starts
    length2 = np.einsum("...i,...i->...", d, d)
    safe = np.where(length2 > 0, length2, 1.0)
    u = np.clip(np.einsum("...i,...i->...", points - starts, d) / safe, 0.0, 1.0)
    nearest = starts + u[..., None] * d
    return np.linalg.norm(points - nearest, axis=-1)


def _directed(
    points: np.ndarray, target: np.ndarray, target_samples: np.ndarray, owners: np.ndarray,
    with_circle: bool,
) -> float:
    """sup over ``points`` of the distance to the target segments (and circle)."""
    if not len(points):
        return 0.0
    best = np.full(len(points), np.inf)
    if with_circle:
        best = np.abs(1.0 - np.linalg.norm(points, axis=1))
    if len(target):
        k = min(NEIGHBOURS, len(target_samples))
        _, idx = cKDTree(target_samples).query(points, k=k)
        idx = np.asarray(idx).reshape(len(points), k)
        candidates = target[owners[idx]]
        distance = _point_segment_distance(points[:, None, :], candidates[:, :, 0], candidates[:, :, 1])
        best = np.minimum(best, distance.min(axis=1))
    return float(best.max())


def hausdorff(
    l1: Lamination, l2: Lamination, delta: float = 2e-3, with_circle: bool = True
) -> float:
    """Hausdorff distance between the chord unions, by default with the unit circle added
    to both sets.

    Each chord is sampled every ``delta``; nearest samples of the other set select
    candidate segments whose exact distance is used, so the error is at most ``delta``.
    """
    if delta <= 0:
        raise RangeError(f"delta must be positive, got {delta}")
    s1, s2 = _segments(l1), _segments(l2)
    if not len(s1) and not len(s2):
        return 0.0
    if not with_circle and (not len(s1) or not len(s2)):
        return math.inf
    p1, o1 = _sample_segments(s1, delta) if len(s1) else (np.empty((0, 2)), np.empty(0, int))
    p2, o2 = _sample_segments(s2, delta) if len(s2) else (np.empty((0, 2)), np.empty(0, int))
    forward = _directed(p1, s2, p2, o2, with_circle)
    backward = _directed(p2, s1, p1, o1, with_circle)
    logger.debug("hausdorff", chords=(len(s1), len(s2)), delta=delta)
    return max(forward, backward)


def _tree_chords(tree: BiTypeTree, pairs: Sequence[Tuple[int, int]]) -> Set[Chord]:
    """Chord of the i-th black vertex between its first and last corner labels."""
    labeling = corner_labeling(tree)
    blacks = tree.black_vertices
    chords: Set[Chord] = set()
    for i, _ in pairs:
        labels = labeling.labels[blacks[i]]
        if labels[0] != labels[-1]:
            chords.add(Chord.between(labels[0], labels[-1], labeling.n))
    return chords


def lam_of_excursion(p: SampledPath, mode: str = "cadlag") -> Lamination:
    """Lamination coded by an excursion-type path.

    Discrete paths (with a lattice walk) use the first-drop pairs of the walk, placed at
    corner labels when the source tree is known and at index/length otherwise.
    """
    if p.lattice is not None and mode == "cadlag":
        walk = list(p.lattice)
        pairs = chords_from_discrete_path(walk)
        if isinstance(p.tree, BiTypeTree):
            return Lamination(corner_labeling(p.tree).n, frozenset(_tree_chords(p.tree, pairs)))
        m = len(walk)
        return Lamination(m, frozenset(Chord.between(i, j, m) for i, j in pairs if (i - j) % m))
    chords: Set[Chord] = set()
    for i, j in path_relation_pairs(p, mode):
        s, t = float(p.grid[i]) % 1.0, float(p.grid[j]) % 1.0
        if s != t:
            chords.add(Chord(s, t))
    return Lamination(0, frozenset(chords))

