"""Non-crossing partitions: crossing test, Kreweras complement, geodesic permutations."""
from itertools import combinations, product
from typing import Iterator, List, Tuple

from shared.types import NonCrossingPartition, NotAPartitionError, Permutation, SetPartition
from shared.types.partition import canonical_blocks, crossing_witness

from servers.minfact_server.src.services.perm_core import compose_ltr, cycle_partition


def is_noncrossing(p: SetPartition) -> bool:
    """Stack scan over 1..n; a block may only be revisited while it is on top."""
    if not isinstance(p, SetPartition):
        raise NotAPartitionError(f"expected a SetPartition, got {type(p).__name__}")
    return crossing_witness(p.n, p.blocks) is None


def geodesic_perm_of(p: SetPartition) -> Permutation:
    """The permutation whose cycles are the blocks of p, each read increasingly."""
    return Permutation.from_cycles(p.n, p.blocks)


def kreweras(p: SetPartition) -> NonCrossingPartition:
    """Kreweras complement: the cycle partition of C * sigma^-1 (left to right).

    sigma is the geodesic permutation of p and C the n-cycle; applying it twice
    rotates p by one step backwards (i -> i-1 mod n).
    """
    p = NonCrossingPartition.of(p)
    sigma = geodesic_perm_of(p)
    product_perm = compose_ltr(Permutation.long_cycle(p.n), sigma.inverse())
    return NonCrossingPartition.of(cycle_partition(product_perm))


def rotate(p: SetPartition, j: int) -> NonCrossingPartition:
    """Replace every element i by ((i - 1 + j) mod n) + 1."""
    n = p.n
    return NonCrossingPartition(
        n, canonical_blocks(tuple((x - 1 + j) % n + 1 for x in b) for b in p.blocks)
    )


def _interval_partitions(lo: int, hi: int) -> Iterator[List[Tuple[int, ...]]]:
    if lo > hi:
        yield []
        return
    rest = range(lo + 1, hi + 1)
    for size in range(len(rest) + 1):
        for others in combinations(rest, size):
            block = (lo,) + others
            bounds = list(block) + [hi + 1]
            gaps = [_interval_partitions(bounds[i] + 1, bounds[i + 1] - 1) for i in range(len(block))]
            for pieces in product(*[list(g) for g in gaps]):
                out = [block]
                for piece in pieces:
                    out.extend(piece)
                yield out


def enumerate_ncp(n: int) -> List[NonCrossingPartition]:
    """All non-crossing partitions of [n] (Catalan many)."""
    return [NonCrossingPartition(n, canonical_blocks(blocks)) for blocks in _interval_partitions(1, n)]


def ncp_with_blocks(n: int, count: int) -> List[NonCrossingPartition]:
    return [p for p in enumerate_ncp(n) if len(p) == count]
