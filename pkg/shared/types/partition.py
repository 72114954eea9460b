from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import CrossingPartitionError, NotAPartitionError

PARTITION_SCHEMA = "minfact.partition/1"

Blocks = Tuple[Tuple[int, ...], ...]


def canonical_blocks(blocks: Iterable[Iterable[int]]) -> Blocks:
    """Sort each block, then order blocks by their minimum."""
    return tuple(sorted((tuple(sorted(int(x) for x in b)) for b in blocks), key=lambda b: b[0]))


def crossing_witness(n: int, blocks: Blocks) -> Optional[Tuple[int, int]]:
    """Return two crossing block indices, or None when the partition is non-crossing.

    Single left-to-right scan: a block may only be revisited when it is on top of the stack.
    """
    owner = [0] * (n + 1)
    for index, block in enumerate(blocks):
        for x in block:
            owner[x] = index
    stack: List[int] = []
    for x in range(1, n + 1):
        index = owner[x]
        block = blocks[index]
        if len(block) == 1:
            continue
        if x == block[0]:
            stack.append(index)
            continue
        if stack[-1] != index:
            return stack[-1], index
        if x == block[-1]:
            stack.pop()
    return None


@dataclass(frozen=True, eq=False)
class SetPartition:
    """A partition of [n] into blocks, stored canonically."""
    n: int
    blocks: Blocks

    def __post_init__(self) -> None:
        blocks = canonical_blocks(self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if any(len(b) == 0 for b in blocks):
            raise NotAPartitionError("empty block")
        flat = sorted(x for b in blocks for x in b)
        if flat != list(range(1, self.n + 1)):
            raise NotAPartitionError(f"blocks do not partition [{self.n}]")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetPartition):
            return NotImplemented
        return self.n == other.n and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash((self.n, self.blocks))

    def __len__(self) -> int:
        return len(self.blocks)

    @cached_property
    def owner(self) -> Tuple[int, ...]:
        """owner[x] is the index of the block containing x (owner[0] unused)."""
        out = [0] * (self.n + 1)
        for index, block in enumerate(self.blocks):
            for x in block:
                out[x] = index
        return tuple(out)

    def block_of(self, x: int) -> Tuple[int, ...]:
        return self.blocks[self.owner[x]]

    def sizes(self) -> List[int]:
        return [len(b) for b in self.blocks]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema": PARTITION_SCHEMA,
            "n": self.n,
            "blocks": [list(b) for b in self.blocks],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SetPartition":
        return cls(n=int(data["n"]), blocks=canonical_blocks(data.get("blocks", [])))

    def __str__(self) -> str:
        return "{" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"


@dataclass(frozen=True, eq=False)
class NonCrossingPartition(SetPartition):
    """A partition of [n] whose blocks have pairwise disjoint convex hulls on the n-gon."""

    def __post_init__(self) -> None:
        super().__post_init__()
        witness = crossing_witness(self.n, self.blocks)
        if witness is not None:
            first, second = (self.blocks[i] for i in witness)
            raise CrossingPartitionError(f"blocks {first} and {second} cross")

    @classmethod
    def singletons(cls, n: int) -> "NonCrossingPartition":
        return cls(n, tuple((x,) for x in range(1, n + 1)))

    @classmethod
    def full(cls, n: int) -> "NonCrossingPartition":
        return cls(n, (tuple(range(1, n + 1)),))

    @classmethod
    def of(cls, partition: SetPartition) -> "NonCrossingPartition":
        return partition if isinstance(partition, cls) else cls(partition.n, partition.blocks)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "NonCrossingPartition":
        return cls(n=int(data["n"]), blocks=canonical_blocks(data.get("blocks", [])))


def from_lists(n: int, blocks: Sequence[Sequence[int]]) -> NonCrossingPartition:
    return NonCrossingPartition(n, canonical_blocks(blocks))
