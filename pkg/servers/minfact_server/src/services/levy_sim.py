"""The spectrally positive Levy process X with Laplace exponent
Phi(l) = -c^2 (1 - sqrt(1 + 2l/c)) - l c, its bridge and excursion, and chord extraction
from excursion-type paths.

Y = X + c t is an inverse Gaussian subordinator: Y_t ~ IG(mean c t, shape c^3 t^2), the
law numpy draws with ``Generator.wald`` (one normal and one uniform per draw).
"""
import math
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from shared.types import (
    BridgeConditionError,
    RangeError,
    RejectionBudgetError,
    SampledPath,
)
from shared.utils.logger import get_logger
from shared.utils.rng import RngStream, as_generator

from servers.minfact_server.src.services.path_codec import hb_paths
from servers.minfact_server.src.services.samplers import sample_conditioned_tree, sample_hb_bridge

logger = get_logger(__name__)

Rng = Union[RngStream, np.random.Generator, int]
ArrayLike = Union[float, np.ndarray]

DEFAULT_ATTEMPTS = 1_000_000
BATCH = 64


def _scalar(out: np.ndarray) -> ArrayLike:
    return float(out) if np.ndim(out) == 0 else out


def ig_increment(dt: float, c: float, rng: Rng, size: Optional[int] = None) -> ArrayLike:
    """Increment of Y over a time step dt; mean c dt, always non-negative."""
    if dt <= 0 or c <= 0:
        raise RangeError(f"need dt > 0 and c > 0, got dt={dt}, c={c}")
    out = as_generator(rng).wald(c * dt, c**3 * dt * dt, size=size)
    return float(out) if size is None else out


def density_d(t: float, x: ArrayLike, c: float) -> ArrayLike:
    """Density of X_t: sqrt(c^3 t^2 / (2 pi (x + ct)^3)) exp(-c x^2 / (2 (x + ct)))."""
    if t <= 0:
        raise RangeError(f"t must be positive, got {t}")
    x = np.asarray(x, dtype=float)
    y = x + c * t
    inside = y > 0
    ys = np.where(inside, y, 1.0)
    value = np.sqrt(c**3 * t * t / (2.0 * math.pi * ys**3)) * np.exp(-c * x * x / (2.0 * ys))
    return _scalar(np.where(inside, value, 0.0))


def density_q(u: float, x: ArrayLike, c: float) -> ArrayLike:
    """Density of Y_u: sqrt(u^2 c^3 / (2 pi x^3)) exp(-c (x - uc)^2 / (2x)) for x > 0."""
    if u <= 0:
        raise RangeError(f"u must be positive, got {u}")
    x = np.asarray(x, dtype=float)
    inside = x > 0
    xs = np.where(inside, x, 1.0)
    value = np.sqrt(u * u * c**3 / (2.0 * math.pi * xs**3)) * np.exp(
        -c * (xs - u * c) ** 2 / (2.0 * xs)
    )
    return _scalar(np.where(inside, value, 0.0))


def levy_measure_density(x: ArrayLike, c: float) -> ArrayLike:
    """Jump intensity c^(3/2) / sqrt(2 pi x^3) e^(-c x / 2) on x > 0."""
    x = np.asarray(x, dtype=float)
    inside = x > 0
    xs = np.where(inside, x, 1.0)
    value = c**1.5 / np.sqrt(2.0 * math.pi * xs**3) * np.exp(-c * xs / 2.0)
    return _scalar(np.where(inside, value, 0.0))


def bridge_marginal_density(u: float, x: ArrayLike, c: float) -> ArrayLike:
    """Density of the bridge at time u: d_u(x) d_{1-u}(-x) / d_1(0)."""
    if not 0 < u < 1:
        raise RangeError(f"u must lie in (0, 1), got {u}")
    return _scalar(
        np.asarray(density_d(u, x, c)) * np.asarray(density_d(1.0 - u, -np.asarray(x), c))
        / density_d(1.0, 0.0, c)
    )


def density_d_max(t: float, c: float) -> float:
    """Maximum of d_t, attained at the inverse Gaussian mode shifted by -ct."""
    mean, shape = c * t, c**3 * t * t
    ratio = mean / shape
    mode = mean * (math.sqrt(1.0 + 2.25 * ratio * ratio) - 1.5 * ratio)
    return float(density_d(t, mode - c * t, c))


def _check_grid(grid: Sequence[float]) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    if len(grid) < 2 or grid[0] != 0.0 or grid[-1] != 1.0 or np.any(np.diff(grid) <= 0):
        raise RangeError("grid must increase strictly from 0 to 1")
    return grid


def levy_process(grid: Sequence[float], c: float, rng: Rng) -> SampledPath:
    """The free process X on the grid, X_0 = 0."""
    grid = _check_grid(grid)
    dt = np.diff(grid)
    gen = as_generator(rng)
    steps = gen.wald(c * dt, c**3 * dt * dt) - c * dt
    return SampledPath(grid, np.concatenate(([0.0], np.cumsum(steps))))


def _bridge_by_rejection(
    grid: np.ndarray, c: float, gen: np.random.Generator, max_attempts: int
) -> SampledPath:
    """Grid skeleton of the bridge, one step at a time.

    At time t with value y the next increment has density d_dt(x) d_{r-dt}(-y-x) / d_r(-y),
    r = 1 - t: free increments are proposed and kept with probability
    d_{r-dt}(-y-x) / max d_{r-dt}. The last increment is forced to return to 0.
    """
    values = np.zeros(len(grid))
    attempts = 0
    y = 0.0
    for j in range(len(grid) - 2):
        dt = grid[j + 1] - grid[j]
        rest = 1.0 - grid[j + 1]
        ceiling = density_d_max(rest, c)
        while True:
            if attempts >= max_attempts:
                raise RejectionBudgetError("bridge rejection sampler exhausted its budget", attempts)
            proposals = gen.wald(c * dt, c**3 * dt * dt, size=BATCH) - c * dt
            accept = gen.random(BATCH) * ceiling < np.asarray(density_d(rest, -y - proposals, c))
            hits = np.flatnonzero(accept)
            if hits.size:
                attempts += int(hits[0]) + 1
                y += float(proposals[hits[0]])
                break
            attempts += BATCH
        values[j + 1] = y
    logger.debug("levy_bridge_rejection", points=len(grid), attempts=attempts)
    return SampledPath(grid, values)


def _discrete_steps(n: int, c: float) -> int:
    return min(max(int(math.floor(c * math.sqrt(n))), 1), n - 1)


def _scaled_walk(grid: np.ndarray, bbar: np.ndarray, c: float, n: int, m: int) -> np.ndarray:
    """c * B_bar[floor(u m)] / n on the grid, with B_bar[0] = 0."""
    padded = np.concatenate(([0], bbar))
    index = np.minimum(np.floor(grid * m).astype(np.int64), m)
    return c * padded[index] / n


def levy_bridge(
    grid: Sequence[float],
    c: float,
    rng: Rng,
    mode: str = "discrete",
    n: int = 10_000,
    max_attempts: int = DEFAULT_ATTEMPTS,
) -> SampledPath:
    """A sample of the bridge of X on the grid.

    ``discrete`` (default) rescales the conditioned (H, B) walk of size n with
    K = floor(c sqrt(n)); ``rejection`` draws the continuum grid skeleton directly.
    """
    grid = _check_grid(grid)
    if c <= 0:
        raise RangeError(f"c must be positive, got {c}")
    gen = as_generator(rng)
    if mode == "rejection":
        return _bridge_by_rejection(grid, c, gen, max_attempts)
    if mode != "discrete":
        raise RangeError(f"unknown bridge mode {mode!r}")
    K = _discrete_steps(n, c)
    bridge = sample_hb_bridge(n, K, gen)
    m = len(bridge)
    return SampledPath(
        grid, _scaled_walk(grid, bridge.b_bar, c, n, m), lattice=tuple(int(v) for v in bridge.b_bar)
    )


def vervaat_continuous(p: SampledPath, tolerance: float = 1e-9) -> SampledPath:
    """Cyclic shift at the right-most minimum, re-based to start at 0.

    The path is read as a step function on a uniform grid; the value at 1 is the left
    limit of the shifted path.
    """
    values = p.values
    if len(values) < 2:
        raise BridgeConditionError("a bridge needs at least two grid points")
    if abs(values[-1] - values[0]) > tolerance:
        raise BridgeConditionError(
            f"path is not a bridge: starts at {values[0]} and ends at {values[-1]}"
        )
    spacing = np.diff(p.grid)
    if not np.allclose(spacing, spacing[0]):
        raise RangeError("the continuous Vervaat transform needs a uniform grid")
    body = values[:-1]
    low = float(body.min())
    last_min = int(np.flatnonzero(body == low)[-1])
    shifted = np.concatenate((body[last_min:], body[:last_min])) - low
    return SampledPath(p.grid, np.append(shifted, shifted[-1]), cadlag=p.cadlag)


def levy_excursion(
    grid: Sequence[float],
    c: float,
    rng: Rng,
    mode: str = "discrete",
    n: int = 10_000,
    root_shifted: bool = False,
    max_attempts: int = DEFAULT_ATTEMPTS,
) -> SampledPath:
    """The excursion of X: Vervaat transform of the bridge.

    In ``discrete`` mode the excursion is read off a conditioned tree directly and keeps
    the tree for chord extraction.
    """
    grid = _check_grid(grid)
    if mode == "rejection":
        return vervaat_continuous(levy_bridge(grid, c, rng, "rejection", max_attempts=max_attempts))
    if mode != "discrete":
        raise RangeError(f"unknown excursion mode {mode!r}")
    K = _discrete_steps(n, c)
    tree = sample_conditioned_tree(n, K, root_shifted, rng)
    bbar = hb_paths(tree).b_bar
    return SampledPath(
        grid,
        _scaled_walk(grid, bbar, c, n, len(bbar)),
        lattice=tuple(int(v) for v in bbar),
        tree=tree,
    )


def brownian_excursion_discrete(n: int, rng: Rng) -> SampledPath:
    """Simple-walk bridge of 2n steps (n up, n down), Vervaat-shifted and scaled by 1/sqrt(2n)."""
    if n < 2:
        raise RangeError(f"n must be at least 2, got {n}")
    gen = as_generator(rng)
    steps = gen.permutation(np.concatenate((np.ones(n, dtype=np.int64), -np.ones(n, dtype=np.int64))))
    walk = np.concatenate(([0], np.cumsum(steps)))
    start = int(np.argmin(walk[:-1]))
    rotated = np.concatenate((steps[start:], steps[:start]))
    excursion = np.concatenate(([0], np.cumsum(rotated)))
    grid = np.linspace(0.0, 1.0, 2 * n + 1)
    return SampledPath(
        grid,
        excursion / math.sqrt(2 * n),
        cadlag=False,
    )


def chords_from_discrete_path(bbar: Sequence[int]) -> List[Tuple[int, int]]:
    """Pairs (i, j), 1-indexed, with j the first k > i where B_bar drops below B_bar[i]."""
    values = [int(v) for v in bbar]
    m = len(values)
    nxt = [0] * (m + 1)
    stack: List[int] = []
    for k in range(1, m + 1):
        while stack and values[k - 1] < values[stack[-1] - 1]:
            nxt[stack.pop()] = k
        stack.append(k)
    return [(i, nxt[i]) for i in range(1, m) if nxt[i]]


def next_at_most(values: Sequence[float]) -> np.ndarray:
    """For each index i, the first j > i with values[j] <= values[i], or -1."""
    out = np.full(len(values), -1, dtype=np.int64)
    stack: List[int] = []
    for j, v in enumerate(values):
        while stack and v <= values[stack[-1]]:
            out[stack.pop()] = j
        stack.append(j)
    return out


def path_relation_pairs(p: SampledPath, mode: str = "cadlag") -> List[Tuple[int, int]]:
    """Grid-index pairs identified by the lamination relation of a real path.

    ``continuous``: i with Z[i+1] > Z[i] is paired with the first j > i where Z[j] <= Z[i].
    ``cadlag``: s with Z[s] > Z[s-1] (Z[-1] = 0) is paired with the first u > s where
    Z[u] <= Z[s-1].
    """
    z = p.values
    pairs: List[Tuple[int, int]] = []
    if mode == "continuous":
        nxt = next_at_most(z)
        for i in range(len(z) - 1):
            if z[i + 1] > z[i] and nxt[i] > 0:
                pairs.append((i, int(nxt[i])))
        return pairs
    if mode != "cadlag":
        raise RangeError(f"unknown lamination mode {mode!r}")
    padded = np.concatenate(([0.0], z))
    nxt = next_at_most(padded)
    for s in range(len(z)):
        if z[s] <= padded[s]:
            continue
        # indices in padded are shifted by one
        target = int(nxt[s])
        if target > 0:
            pairs.append((s, target - 1))
    return pairs
