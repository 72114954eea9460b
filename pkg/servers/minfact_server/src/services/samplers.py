"""Exact samplers: uniform minimal factorizations, conditioned two-type trees and
the partition of a partial product."""
import math
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import gammaln, logsumexp

from shared.types import (
    BiTypeTree,
    Factorization,
    InfeasibleConditioningError,
    NonCrossingPartition,
    OffspringParams,
    PathPair,
    PhiCode,
    RangeError,
    Transposition,
)
from shared.types.partition import canonical_blocks
from shared.utils.logger import get_logger
from shared.utils.rng import RngStream, as_generator

from servers.minfact_server.src.services.dist_engine import log_pmf_mu, log_walk_pmf, params_for
from servers.minfact_server.src.services.ncp import is_noncrossing
from servers.minfact_server.src.services.path_codec import (
    decode_phi,
    first_minimum_index,
    good_cyclic_shifts,
)
from servers.minfact_server.src.services.perm_core import cycle_partition, partial_product
from servers.minfact_server.src.services.tree_duality import partition_of_tree

logger = get_logger(__name__)

Rng = Union[RngStream, np.random.Generator, int]


def _log_cycle_weights(n: int) -> np.ndarray:
    """w[j] = log(j^(j-2) / (j-1)!) for j = 1..n (w[0] unused)."""
    j = np.arange(1, n + 1, dtype=float)
    return np.concatenate(([-np.inf], (j - 2) * np.log(j) - gammaln(j)))


def _gap_log_weights(m: int, lw: np.ndarray) -> np.ndarray:
    """Unnormalised log P(gap = i), i = 1..m-1, for the first factor of a minimal
    factorization of an m-cycle."""
    i = np.arange(1, m)
    return np.log(m - i) + lw[i] + lw[m - i]


def first_gap_law(n: int) -> np.ndarray:
    """P(t_1 = (a, a+i) for some a), i = 1..n-1, as an array indexed by i-1."""
    if n < 2:
        raise RangeError(f"the first factor needs n >= 2, got {n}")
    logw = _gap_log_weights(n, _log_cycle_weights(n))
    return np.exp(logw - logsumexp(logw))


def _draw(log_weights: np.ndarray, gen: np.random.Generator) -> int:
    """Index drawn from unnormalised log weights by inverse CDF."""
    p = np.exp(log_weights - logsumexp(log_weights))
    cdf = np.cumsum(p)
    index = int(np.searchsorted(cdf, gen.random() * cdf[-1], side="right"))
    return min(index, len(p) - 1)


def sample_first_gap(n: int, rng: Rng, size: Optional[int] = None) -> Union[int, np.ndarray]:
    """Gap b - a of the first transposition of a uniform minimal factorization."""
    gen = as_generator(rng)
    law = first_gap_law(n)
    if size is None:
        return int(gen.choice(n - 1, p=law)) + 1
    return gen.choice(n - 1, size=size, p=law) + 1


def sample_min_factorization(n: int, rng: Rng) -> Factorization:
    """A uniform element of the minimal factorizations of (1, ..., n).

    The first factor (a, a+i) splits the remaining product into two increasing cycles
    of lengths i and n-i; their factorizations are drawn independently and shuffled
    into uniformly chosen positions. Work items carry the labels of the cycle and the
    output positions reserved for its factors, so no recursion is needed.
    """
    if n < 1:
        raise RangeError(f"n must be positive, got {n}")
    gen = as_generator(rng)
    lw = _log_cycle_weights(n)
    factors: List[Optional[Transposition]] = [None] * (n - 1)
    work: List[Tuple[np.ndarray, np.ndarray]] = [
        (np.arange(1, n + 1), np.arange(n - 1))
    ]
    while work:
        labels, slots = work.pop()
        m = len(labels)
        if m < 2:
            continue
        gap = _draw(_gap_log_weights(m, lw), gen) + 1
        a = int(gen.integers(1, m - gap + 1))
        factors[slots[0]] = Transposition(int(labels[a - 1]), int(labels[a + gap - 1]))

        rest = slots[1:]
        inside = np.zeros(len(rest), dtype=bool)
        if gap > 1:
            inside[gen.choice(len(rest), size=gap - 1, replace=False)] = True
        # the inner cycle is a+1..a+gap, the outer one 1..a, a+gap+1..m
        work.append((labels[a : a + gap], rest[inside]))
        work.append((np.concatenate((labels[:a], labels[a + gap :])), rest[~inside]))
    logger.debug("sample_min_factorization", n=n)
    return Factorization(n, tuple(factors))  # type: ignore[arg-type]


def conditioned_counts(
    count: int, total: int, params: OffspringParams, rng: Rng
) -> np.ndarray:
    """``count`` i.i.d. offspring numbers of law ``params`` conditioned to sum to ``total``.

    Drawn one at a time from P(X_1 = i | S_N = s) = mu(i) P(S_{N-1} = s-i) / P(S_N = s).
    """
    gen = as_generator(rng)
    out = np.zeros(count, dtype=np.int64)
    remaining = total
    for j in range(count):
        left = count - j
        if remaining == 0:
            break
        if left == 1:
            out[j] = remaining
            remaining = 0
            break
        i = np.arange(remaining + 1)
        logw = log_pmf_mu(i, params) + log_walk_pmf(left - 1, remaining - i, params)
        x = _draw(logw, gen)
        out[j] = x
        remaining -= x
    if remaining != 0:
        raise InfeasibleConditioningError(f"cannot split {total} among {count} vertices")
    return out


def sample_walk_sum(
    N: int, params: OffspringParams, rng: Rng, size: Optional[int] = None, width: float = 60.0
) -> Union[int, np.ndarray]:
    """S_N, the sum of N i.i.d. offspring numbers, from its closed-form law.

    The support is cut ``width`` standard deviations above the mean.
    """
    gen = as_generator(rng)
    if N == 0:
        return 0 if size is None else np.zeros(size, dtype=np.int64)
    mean = N * params.m
    top = int(math.ceil(mean + width * math.sqrt(N * params.variance))) + 1
    logw = log_walk_pmf(N, np.arange(top + 1), params)
    p = np.exp(logw - logsumexp(logw))
    if size is None:
        return int(gen.choice(top + 1, p=p))
    return gen.choice(top + 1, size=size, p=p)


def sample_unconditioned_endpoint(
    n: int,
    K: int,
    rng: Rng,
    size: int,
    params: Optional[Tuple[OffspringParams, OffspringParams]] = None,
) -> np.ndarray:
    """B_bar after n-K steps of the free (H, B) walk, ``size`` independent copies.

    H_bar is a sum of black offspring numbers and, given H_bar = h, B_bar + (n-K) is a
    sum of h white ones; draws sharing h share one table.
    """
    black, white = params if params is not None else params_for(n, K)
    gen = as_generator(rng)
    steps = n - K
    h = np.asarray(sample_walk_sum(steps, black, gen, size=size))
    out = np.empty(size, dtype=np.int64)
    for value in np.unique(h):
        where = np.flatnonzero(h == value)
        out[where] = np.asarray(sample_walk_sum(int(value), white, gen, size=len(where))) - steps
    return out


def _white_blocks(h: Sequence[int], w: Sequence[int]) -> List[List[int]]:
    blocks = []
    pos = 0
    for k in h:
        blocks.append([int(x) for x in w[pos : pos + k]])
        pos += k
    return blocks


def _bridge_blocks(
    n_black: int,
    n_white: int,
    black: OffspringParams,
    white: OffspringParams,
    gen: np.random.Generator,
) -> Tuple[np.ndarray, List[List[int]]]:
    h = conditioned_counts(n_black, n_white, black, gen)
    w = conditioned_counts(n_white, n_black - 1, white, gen)
    return h, _white_blocks(h, w)


def sample_hb_bridge(
    n: int,
    K: int,
    rng: Rng,
    params: Optional[Tuple[OffspringParams, OffspringParams]] = None,
) -> PathPair:
    """(H, B) pairs of n-K black vertices conditioned on H_bar = K+1 and B_bar = -1 at the
    end, before any cyclic shift."""
    if not 1 <= K <= n - 1:
        raise InfeasibleConditioningError(f"no bridge with n={n}, K={K}: need 1 <= K <= n-1")
    black, white = params if params is not None else params_for(n, K)
    h, blocks = _bridge_blocks(n - K, K + 1, black, white, as_generator(rng))
    return PathPair(tuple((int(k), sum(block)) for k, block in zip(h, blocks)))


def _tree_from_blocks(h: Sequence[int], blocks: Sequence[Sequence[int]], shift: int) -> BiTypeTree:
    m = len(h)
    order = [(shift + r) % m for r in range(m)]
    H = tuple(int(h[i]) for i in order)
    W = tuple(x for i in order for x in blocks[i])
    return decode_phi(PhiCode(H, W))


def sample_conditioned_tree(
    n: int,
    K: int,
    root_shifted: bool,
    rng: Rng,
    params: Optional[Tuple[OffspringParams, OffspringParams]] = None,
) -> BiTypeTree:
    """Alternating two-type tree with n-K black and K+1 white vertices, distributed as the
    two-type Galton-Watson tree conditioned on those counts.

    With ``root_shifted`` the root has the shifted law mu~(i) = mu(i-1).
    """
    if not 1 <= K <= n - 1:
        raise InfeasibleConditioningError(f"no tree with n={n}, K={K}: need 1 <= K <= n-1")
    gen = as_generator(rng)
    black, white = params if params is not None else params_for(n, K)
    n_black, n_white = n - K, K + 1

    if not root_shifted:
        h, blocks = _bridge_blocks(n_black, n_white, black, white, gen)
        b = [sum(block) for block in blocks]
        # Vervaat: restart the block sequence right after the first minimum
        shift = first_minimum_index(b) % n_black
        tree = _tree_from_blocks(h, blocks, shift)
    else:
        # the root's extra child is its first white child; the walk of the remaining
        # blocks must stay above -(extra + 1), which holds for extra + 1 of its rotations,
        # so extra is drawn size-biased by (extra + 1)
        x = conditioned_counts(n_black, n_white - 1, black, gen)
        support = np.arange(n_black)
        logw = (
            np.log(support + 1.0)
            + log_pmf_mu(support, white)
            + log_walk_pmf(n_white - 1, n_black - 1 - support, white)
        )
        extra = _draw(logw, gen)
        w = conditioned_counts(n_white - 1, n_black - 1 - extra, white, gen)
        blocks = _white_blocks(x, w)
        increments = [sum(block) - 1 for block in blocks]
        shifts = good_cyclic_shifts(increments, extra + 1)
        shift = shifts[int(gen.integers(0, len(shifts)))]
        order = [(shift + r) % n_black for r in range(n_black)]
        H = (int(x[order[0]]) + 1,) + tuple(int(x[i]) for i in order[1:])
        W = (extra,) + tuple(v for i in order for v in blocks[i])
        tree = decode_phi(PhiCode(H, W))

    logger.debug("sample_conditioned_tree", n=n, K=K, root_shifted=root_shifted)
    return tree


def forest_edges(f: Factorization, k: int) -> List[Transposition]:
    """The edges t_1, ..., t_k of the forest of the first k factors."""
    if not 0 <= k <= f.n - 1:
        raise RangeError(f"k={k} outside [0, {f.n - 1}]")
    return list(f.factors[:k])


class UnionFind:
    """Disjoint sets over 1..n with union by height."""

    def __init__(self, n: int):
        self.parents: List[int] = list(range(n + 1))
        self.heights: List[int] = [1] * (n + 1)

    def root(self, v: int) -> int:
        while self.parents[v] != v:
            self.parents[v] = self.parents[self.parents[v]]
            v = self.parents[v]
        return v

    def join(self, v1: int, v2: int) -> None:
        r1, r2 = self.root(v1), self.root(v2)
        if r1 == r2:
            return
        if self.heights[r1] <= self.heights[r2]:
            self.parents[r1] = r2
            self.heights[r2] = max(self.heights[r2], self.heights[r1] + 1)
        else:
            self.parents[r2] = r1

    def groups(self, n: int) -> List[Tuple[int, ...]]:
        members: Dict[int, List[int]] = {}
        for v in range(1, n + 1):
            members.setdefault(self.root(v), []).append(v)
        return [tuple(m) for m in members.values()]


def forest_components(n: int, edges: Sequence[Transposition]) -> NonCrossingPartition:
    """Connected components of the graph on [n] with the given edges."""
    uf = UnionFind(n)
    for t in edges:
        uf.join(t.a, t.b)
    return NonCrossingPartition(n, canonical_blocks(uf.groups(n)))


def partial_product_partition(f: Factorization, k: int) -> NonCrossingPartition:
    """Cycle partition of t_1 ... t_k; its blocks are the components of the forest of
    the same factors."""
    if not 1 <= k <= f.n - 1:
        raise RangeError(f"k={k} outside [1, {f.n - 1}]")
    partition = cycle_partition(partial_product(f, k))
    if not is_noncrossing(partition):
        raise InfeasibleConditioningError(f"partial product {k} of a factorization crosses")
    return NonCrossingPartition.of(partition)


def sample_partial_partition(
    n: int, K: int, rng: Rng, route: str = "factorization"
) -> NonCrossingPartition:
    """The partition of t_1 ... t_K for a uniform minimal factorization.

    ``route="tree"`` reads it off a root-shifted conditioned tree instead of sampling
    the whole factorization.
    """
    if not 1 <= K <= n - 1:
        raise RangeError(f"K={K} outside [1, {n - 1}]")
    if route == "factorization":
        return partial_product_partition(sample_min_factorization(n, rng), K)
    if route == "tree":
        # the tree has n-K black vertices, one per block of a partition of [n] with n-K blocks
        return partition_of_tree(sample_conditioned_tree(n, K, True, rng))
    raise RangeError(f"unknown route {route!r}")
