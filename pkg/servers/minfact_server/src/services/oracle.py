"""Exhaustive enumeration and exact rational laws for small n.

Everything here is brute force on purpose: these functions are the ground truth the
closed forms and samplers are checked against.
"""
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy.signal import convolve2d

from shared.config import get_settings
from shared.types import (
    BLACK,
    WHITE,
    BiTypeTree,
    EnumerationLimitError,
    Factorization,
    NonCrossingPartition,
    OffspringParams,
    Permutation,
    PlaneTree,
    RangeError,
    SetPartition,
    Transposition,
)
from shared.types.permutation import running_products
from shared.utils.logger import get_logger

from servers.minfact_server.src.services.dist_engine import (
    log_pmf_mu,
    pmf_mu,
    walk_pmf,
    walk_pmf_by_convolution,
)
from servers.minfact_server.src.services.ncp import kreweras
from servers.minfact_server.src.services.perm_core import cycle_partition

logger = get_logger(__name__)

MAX_ENUMERATION_N = 8
MAX_TREE_VERTICES = 12
IDENTITY_TOLERANCE = 1e-10

FactorTuple = Tuple[Tuple[int, int], ...]


def _check_size(n: int) -> None:
    if n < 1:
        raise RangeError(f"n must be positive, got {n}")
    if n > MAX_ENUMERATION_N:
        raise EnumerationLimitError(f"enumeration is limited to n <= {MAX_ENUMERATION_N}, got {n}")


def _splitting_pairs(image: Sequence[int]) -> List[Tuple[int, int]]:
    """Pairs a < b lying in the same cycle of the permutation with this image."""
    n = len(image)
    cycle = [0] * (n + 1)
    label = 0
    for start in range(1, n + 1):
        if cycle[start]:
            continue
        label += 1
        x = start
        while not cycle[x]:
            cycle[x] = label
            x = image[x - 1]
    return [(a, b) for a, b in combinations(range(1, n + 1), 2) if cycle[a] == cycle[b]]


def _tuples_from(n: int, image: Tuple[int, ...], prefix: FactorTuple) -> Iterator[FactorTuple]:
    """Depth-first completion of ``prefix``; ``image`` is the product still to factor.

    If R = t R' then R'(z) = R(t(z)); the cycle count of R' is one more than that of R
    exactly when t splits a cycle of R, which every factor of a minimal factorization must.
    """
    stack = [(image, prefix)]
    while stack:
        image, prefix = stack.pop()
        if len(prefix) == n - 1:
            yield prefix
            continue
        for a, b in reversed(_splitting_pairs(image)):
            nxt = list(image)
            nxt[a - 1], nxt[b - 1] = image[b - 1], image[a - 1]
            stack.append((tuple(nxt), prefix + ((a, b),)))


def iter_factor_tuples(n: int) -> Iterator[FactorTuple]:
    """Minimal factorizations of (1, ..., n) as tuples of pairs, lexicographically."""
    _check_size(n)
    yield from _tuples_from(n, Permutation.long_cycle(n).image, ())


def _subtree(n: int, first: Tuple[int, int]) -> List[FactorTuple]:
    image = list(Permutation.long_cycle(n).image)
    a, b = first
    image[a - 1], image[b - 1] = image[b - 1], image[a - 1]
    return list(_tuples_from(n, tuple(image), (first,)))


def enumerate_factor_tuples(n: int, workers: Optional[int] = None) -> List[FactorTuple]:
    """All of them, the search split over the first factor."""
    _check_size(n)
    if n == 1:
        return [()]
    firsts = list(combinations(range(1, n + 1), 2))
    with ThreadPoolExecutor(max_workers=workers or get_settings().threads) as pool:
        parts = list(pool.map(lambda t: _subtree(n, t), firsts))
    out = [f for part in parts for f in part]
    logger.debug("enumerate_factorizations", n=n, count=len(out))
    return out


def enumerate_factorizations(n: int, workers: Optional[int] = None) -> List[Factorization]:
    return [Factorization(n, f) for f in enumerate_factor_tuples(n, workers)]


def count_factorizations(n: int) -> int:
    return sum(1 for _ in iter_factor_tuples(n))


def cycle_weight(size: int) -> Fraction:
    """size^(size-2) / (size-1)!, which is 1 for a fixed point."""
    if size < 1:
        raise RangeError(f"block size must be positive, got {size}")
    if size == 1:
        return Fraction(1)
    return Fraction(size ** (size - 2), factorial(size - 1))


def _product_partition(n: int, factors: Sequence[Tuple[int, int]]) -> NonCrossingPartition:
    image: List[int] = []
    for image in running_products(n, [Transposition(a, b) for a, b in factors]):
        pass
    return NonCrossingPartition.of(cycle_partition(Permutation(n, tuple(image))))


def exact_law_partial_product(n: int, k: int) -> Dict[NonCrossingPartition, Fraction]:
    """Law of the cycle partition of t_1 ... t_k over all minimal factorizations."""
    _check_size(n)
    if not 1 <= k <= n - 1:
        raise RangeError(f"k={k} outside [1, {n - 1}]")
    counts = Counter(f[:k] for f in iter_factor_tuples(n))
    law: Counter = Counter()
    for prefix, count in counts.items():
        law[_product_partition(n, prefix)] += count
    total = sum(law.values())
    return {p: Fraction(c, total) for p, c in law.items()}


def partial_product_formula(p: SetPartition, k: int) -> Fraction:
    """k! (n-k-1)! / n^(n-2) times the block weights of p and of its Kreweras complement."""
    n = p.n
    if len(p) != n - k:
        raise RangeError(f"a partial product of {k} factors has {n - k} blocks, got {len(p)}")
    value = Fraction(factorial(k) * factorial(n - k - 1), n ** (n - 2))
    for block in p.blocks + kreweras(p).blocks:
        value *= cycle_weight(len(block))
    return value


def first_factor_law(n: int) -> Dict[Transposition, Fraction]:
    counts = Counter(f[0] for f in iter_factor_tuples(n))
    total = sum(counts.values())
    return {Transposition(a, b): Fraction(c, total) for (a, b), c in counts.items()}


def first_factor_formula(n: int, a: int, b: int) -> Fraction:
    """P(t_1 = (a, b)) = (n-2)!/n^(n-2) * w(b-a) * w(n-b+a), w the cycle weight."""
    i = abs(b - a)
    if not 1 <= i <= n - 1:
        raise RangeError(f"({a}, {b}) is not a transposition of [{n}]")
    return Fraction(factorial(n - 2), n ** (n - 2)) * cycle_weight(i) * cycle_weight(n - i)


@lru_cache(maxsize=None)
def _minimal_counts(n: int) -> Dict[Tuple[int, ...], int]:
    """Number of minimal factorizations of every permutation of [n].

    Built level by level from the identity: a minimal factorization only ever multiplies
    by transpositions joining two cycles.
    """
    _check_size(n)
    level: Dict[Tuple[int, ...], int] = {tuple(range(1, n + 1)): 1}
    table = dict(level)
    for _ in range(n - 1):
        nxt: Counter = Counter()
        for image, count in level.items():
            cycles = Permutation(n, image).cycles
            for left, right in combinations(range(len(cycles)), 2):
                for a in cycles[left]:
                    for b in cycles[right]:
                        # apply the current product, then (a b)
                        new = tuple(b if y == a else a if y == b else y for y in image)
                        nxt[new] += count
        level = dict(nxt)
        table.update(level)
    return table


def count_minfacts_of_perm(sigma: Permutation) -> int:
    """Number of shortest transposition sequences whose left-to-right product is sigma."""
    return _minimal_counts(sigma.n)[sigma.image]


def minfact_count_formula(sigma: Permutation) -> int:
    """(n - #cycles)! times the product of the cycle weights."""
    value = Fraction(factorial(sigma.n - sigma.cycle_count()))
    for cycle in sigma.cycles:
        value *= cycle_weight(len(cycle))
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral count {value} for {sigma}")
    return int(value)


def _child_count_sequences(size: int) -> List[Tuple[int, ...]]:
    """Preorder child counts of all plane trees with ``size`` vertices."""
    out: List[Tuple[int, ...]] = []
    stack: List[Tuple[Tuple[int, ...], int]] = [((), 1)]
    while stack:
        counts, open_slots = stack.pop()
        left = size - len(counts)
        if left == 0:
            if open_slots == 0:
                out.append(counts)
            continue
        for c in range(left):
            slots = open_slots - 1 + c
            if slots > left - 1:
                break
            if slots == 0 and left > 1:
                continue
            stack.append((counts + (c,), slots))
    return sorted(out)


def enumerate_trees_up_to(vertices: int, root_color: str = BLACK) -> List[BiTypeTree]:
    """All alternating plane trees with at most ``vertices`` vertices, by size."""
    if vertices > MAX_TREE_VERTICES:
        raise EnumerationLimitError(f"tree enumeration is limited to {MAX_TREE_VERTICES} vertices")
    return [
        BiTypeTree(PlaneTree.from_child_counts(counts).parents, root_color=root_color)
        for size in range(1, vertices + 1)
        for counts in _child_count_sequences(size)
    ]


def enumerate_trees(
    n_black_max: int, n_white_max: int, root_color: str = BLACK
) -> List[BiTypeTree]:
    """All alternating plane trees with at most the given numbers of vertices per colour."""
    out = [
        t for t in enumerate_trees_up_to(n_black_max + n_white_max, root_color)
        if t.black_count <= n_black_max and t.white_count <= n_white_max
    ]
    logger.debug("enumerate_trees", bounds=(n_black_max, n_white_max), root=root_color, count=len(out))
    return out


def bgw_probability(
    tree: BiTypeTree,
    black: OffspringParams,
    white: OffspringParams,
    root_shifted: bool = False,
) -> float:
    """Probability of ``tree`` under the alternating Galton-Watson law.

    Vertices reproduce by the law of their colour; with ``root_shifted`` the root uses
    mu~(k) = mu(k-1) instead.
    """
    log_p = 0.0
    for v, children in enumerate(tree.children):
        params = black if tree.is_black(v) else white
        k = len(children)
        if v == 0 and root_shifted:
            if k == 0:
                return 0.0
            k -= 1
        log_p += float(log_pmf_mu(k, params))
    return float(np.exp(log_p))


def exact_conditional_tree_law(
    n: int,
    K: int,
    black: OffspringParams,
    white: OffspringParams,
    root_shifted: bool = False,
) -> Dict[BiTypeTree, float]:
    """Law of the tree conditioned on n-K black and K+1 white vertices."""
    if not 1 <= K <= n - 1:
        raise RangeError(f"K={K} outside [1, {n - 1}]")
    trees = [
        t for t in enumerate_trees(n - K, K + 1)
        if t.black_count == n - K and t.white_count == K + 1
    ]
    weights = np.array([bgw_probability(t, black, white, root_shifted) for t in trees])
    weights /= weights.sum()
    return dict(zip(trees, (float(w) for w in weights)))


def _count_table(
    trees: Sequence[BiTypeTree], black: OffspringParams, white: OffspringParams,
    n_black_max: int, n_white_max: int,
) -> np.ndarray:
    table = np.zeros((n_black_max + 1, n_white_max + 1))
    for t in trees:
        table[t.black_count, t.white_count] += bgw_probability(t, black, white)
    return table


def _identity_report(name: str, cases: List[Dict], tolerance: float) -> Dict:
    errors = [abs(c["lhs"] - c["rhs"]) for c in cases]
    failures = [c for c, e in zip(cases, errors) if e > tolerance]
    return {
        "identity": name,
        "cases": len(cases),
        "max_error": max(errors, default=0.0),
        "passed": not failures,
        "failures": failures[:10],
    }


def _walk(N: int, k: int, params: OffspringParams) -> float:
    return walk_pmf(N, k, params) if k >= 0 else 0.0


def check_given_number_formulas(
    black: OffspringParams,
    white: OffspringParams,
    n_black_max: int = 5,
    n_white_max: int = 4,
    tolerance: float = IDENTITY_TOLERANCE,
) -> Dict:
    """Compare enumerated tree and forest probabilities with the walk formulas.

    Trees are summed from :func:`bgw_probability`; forests of j trees by the j-fold
    convolution of the single-tree table, exact within the bounds since every tree has
    at least one vertex of its root colour.
    """
    blacks = _count_table(enumerate_trees(n_black_max, n_white_max, BLACK), black, white,
                          n_black_max, n_white_max)
    whites = _count_table(enumerate_trees(n_black_max, n_white_max, WHITE), black, white,
                          n_black_max, n_white_max)

    black_root, white_root, black_forest, white_forest = [], [], [], []
    for nb in range(1, n_black_max + 1):
        for nw in range(0, n_white_max + 1):
            rhs = _walk(nb, nw, black) * _walk(nw, nb - 1, white) / nb
            black_root.append({"n_black": nb, "n_white": nw, "lhs": blacks[nb, nw], "rhs": rhs})
    for nb in range(0, n_black_max + 1):
        for nw in range(1, n_white_max + 1):
            rhs = _walk(nb, nw - 1, black) * _walk(nw, nb, white) / nw
            white_root.append({"n_black": nb, "n_white": nw, "lhs": whites[nb, nw], "rhs": rhs})

    for single, forest, per_black in ((blacks, black_forest, True), (whites, white_forest, False)):
        power = single.copy()
        for j in range(1, max(n_black_max, n_white_max) + 1):
            for nb in range(n_black_max + 1):
                for nw in range(n_white_max + 1):
                    roots = nb if per_black else nw
                    if roots < j:
                        continue
                    if per_black:
                        rhs = j / nb * _walk(nb, nw, black) * _walk(nw, nb - j, white)
                    else:
                        rhs = j / nw * _walk(nb, nw - j, black) * _walk(nw, nb, white)
                    forest.append({"j": j, "n_black": nb, "n_white": nw,
                                   "lhs": float(power[nb, nw]), "rhs": rhs})
            power = convolve2d(power, single)[: n_black_max + 1, : n_white_max + 1]

    support = np.arange(n_black_max + n_white_max + 1)
    checks = [
        _identity_report("black-rooted tree", black_root, tolerance),
        _identity_report("white-rooted tree", white_root, tolerance),
        _identity_report("forest of black-rooted trees", black_forest, tolerance),
        _identity_report("forest of white-rooted trees", white_forest, tolerance),
    ]
    return {
        "passed": all(c["passed"] for c in checks),
        "tolerance": tolerance,
        "bounds": [n_black_max, n_white_max],
        "tail_mass": {
            "black": float(1.0 - np.sum(pmf_mu(support, black))),
            "white": float(1.0 - np.sum(pmf_mu(support, white))),
        },
        "checks": checks,
    }


def hb_step_law(
    black: OffspringParams, white: OffspringParams, max_h: int, max_b: int
) -> np.ndarray:
    """P(H = i, B = j): i white children, then j black grandchildren among them."""
    mu = pmf_mu(np.arange(max_h + 1), black)
    law = np.zeros((max_h + 1, max_b + 1))
    for i in range(max_h + 1):
        law[i] = mu[i] * walk_pmf_by_convolution(i, max_b, white)
    return law


def hb_walk_law(
    black: OffspringParams,
    white: OffspringParams,
    steps: int,
    max_h: int,
    max_b: int,
    excursion: bool = False,
) -> np.ndarray:
    """law[h, s] = P(H_bar_m = h, b_1 + ... + b_m = s) for m = ``steps``, so B_bar_m = s - m.

    With ``excursion`` the walk must also keep B_bar_i >= 0 for every i < m.
    """
    step = hb_step_law(black, white, max_h, max_b)
    law = np.zeros((max_h + 1, max_b + 1))
    law[0, 0] = 1.0
    for i in range(1, steps + 1):
        law = convolve2d(law, step)[: max_h + 1, : max_b + 1]
        if excursion and i < steps:
            law[:, : min(i, max_b + 1)] = 0.0
    return law


def check_walk_identities(
    black: OffspringParams,
    white: OffspringParams,
    bound: int = 6,
    tolerance: float = IDENTITY_TOLERANCE,
) -> Dict:
    """The product law of (H_bar, B_bar), the 1/m cyclic-lemma factor and the tree-count law."""
    joint, cyclic, trees = [], [], []
    tree_table = _count_table(
        enumerate_trees(bound, bound, BLACK) if 2 * bound <= MAX_TREE_VERTICES else [],
        black, white, bound, bound,
    )
    for m in range(1, bound + 1):
        free = hb_walk_law(black, white, m, bound, 2 * bound)
        kept = hb_walk_law(black, white, m, bound, 2 * bound, excursion=True)
        for h in range(bound + 1):
            for s in range(bound + 1):
                rhs = _walk(m, h, black) * _walk(h, s, white)
                joint.append({"m": m, "h": h, "b_bar": s - m, "lhs": float(free[h, s]), "rhs": rhs})
            cyclic.append({"m": m, "h": h, "lhs": float(kept[h, m - 1]),
                           "rhs": float(free[h, m - 1]) / m})
            if 2 * bound <= MAX_TREE_VERTICES:
                trees.append({"n_black": m, "n_white": h, "lhs": float(tree_table[m, h]),
                              "rhs": float(kept[h, m - 1])})
    checks = [
        _identity_report("joint walk law", joint, tolerance),
        _identity_report("cyclic lemma", cyclic, tolerance),
        _identity_report("tree sizes as excursions", trees, tolerance),
    ]
    return {"passed": all(c["passed"] for c in checks), "tolerance": tolerance, "checks": checks}


def check_stationarity(n: int) -> Optional[Tuple]:
    """A prefix pattern whose count differs from the matching suffix count, or None."""
    factors = list(iter_factor_tuples(n))
    prefixes = Counter(f[:-1] for f in factors)
    suffixes = Counter(f[1:] for f in factors)
    for pattern in set(prefixes) | set(suffixes):
        if prefixes[pattern] != suffixes[pattern]:
            return pattern, prefixes[pattern], suffixes[pattern]
    return None


def check_kreweras_symmetry(n: int, k: int) -> Optional[Tuple]:
    """Compare the law of the partition after n-k-1 factors with the law of the
    Kreweras complement after k factors; returns a differing partition or None."""
    complement: Dict[NonCrossingPartition, Fraction] = Counter()
    for p, q in exact_law_partial_product(n, k).items():
        complement[kreweras(p)] += q
    direct = exact_law_partial_product(n, n - k - 1)
    for p in set(direct) | set(complement):
        if direct.get(p, Fraction(0)) != complement.get(p, Fraction(0)):
            return p, direct.get(p, Fraction(0)), complement.get(p, Fraction(0))
    return None


def chords_cross(first: Tuple[Fraction, Fraction], second: Tuple[Fraction, Fraction]) -> bool:
    """Strict interleaving of the endpoint angles."""
    (s1, t1), (s2, t2) = sorted(first), sorted(second)
    return s1 < s2 < t1 < t2 or s2 < s1 < t2 < t1


def crossing_pairs_bruteforce(chords: Sequence[Tuple]) -> List[Tuple]:
    """Every crossing pair, by checking all pairs."""
    return [(c1, c2) for c1, c2 in combinations(chords, 2) if chords_cross(c1, c2)]
