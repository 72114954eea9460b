"""Permutations, left-to-right products and minimal factorizations of the n-cycle."""
from typing import Iterable, List, Sequence

from shared.types import (
    Factorization,
    Permutation,
    RangeError,
    SetPartition,
    SizeMismatchError,
    Transposition,
)
from shared.types.partition import canonical_blocks
from shared.types.permutation import running_products


def compose_ltr(sigma: Permutation, tau: Permutation) -> Permutation:
    """Product read left to right: the result maps x to tau(sigma(x))."""
    if sigma.n != tau.n:
        raise SizeMismatchError(f"cannot compose permutations of [{sigma.n}] and [{tau.n}]")
    return sigma.then(tau)


def product_ltr(n: int, factors: Iterable[Transposition]) -> Permutation:
    final: List[int] = []
    for final in running_products(n, list(factors)):
        pass
    return Permutation(n, tuple(final))


def cycle_partition(sigma: Permutation) -> SetPartition:
    """The partition of [n] into the orbits of sigma."""
    return SetPartition(sigma.n, canonical_blocks(sigma.cycles))


def is_minimal_factorization(n: int, factors: Sequence[Transposition]) -> bool:
    if n < 1:
        raise RangeError(f"n must be positive, got {n}")
    for t in factors:
        if t.a < 1 or t.b > n:
            raise RangeError(f"transposition {t} outside [{n}]")
    if len(factors) != n - 1:
        return False
    return product_ltr(n, factors) == Permutation.long_cycle(n)


def partial_product(f: Factorization, k: int) -> Permutation:
    """Left-to-right product of the first k factors; it has exactly n-k cycles."""
    if not 0 <= k <= f.n - 1:
        raise RangeError(f"k={k} outside [0, {f.n - 1}]")
    return product_ltr(f.n, f.factors[:k])


def partial_products(f: Factorization) -> List[Permutation]:
    """All prefix products, index k holding the product of the first k factors."""
    return [Permutation(f.n, tuple(image)) for image in running_products(f.n, f.factors)]
