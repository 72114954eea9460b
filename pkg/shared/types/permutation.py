from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, Iterable, List, Sequence, Tuple

from .errors import InvalidFactorizationError, RangeError, SizeMismatchError

FACTORIZATION_SCHEMA = "minfact.factorization/1"


@dataclass(frozen=True)
class Permutation:
    """A bijection of [n] stored as its 1-indexed image array.

    Products are read left to right: ``sigma.then(tau)`` applies sigma first.
    """
    n: int
    image: Tuple[int, ...]

    def __post_init__(self) -> None:
        image = tuple(int(x) for x in self.image)
        object.__setattr__(self, "image", image)
        if len(image) != self.n:
            raise SizeMismatchError(f"image has length {len(image)}, expected {self.n}")
        if sorted(image) != list(range(1, self.n + 1)):
            raise RangeError(f"image is not a bijection of [{self.n}]")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(n, tuple(range(1, n + 1)))

    @classmethod
    def long_cycle(cls, n: int) -> "Permutation":
        """The n-cycle (1, 2, ..., n)."""
        return cls(n, tuple(range(2, n + 1)) + (1,) if n > 0 else ())

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        image = list(range(1, n + 1))
        for cycle in cycles:
            for pos, x in enumerate(cycle):
                if not 1 <= x <= n:
                    raise RangeError(f"cycle entry {x} outside [{n}]")
                image[x - 1] = cycle[(pos + 1) % len(cycle)]
        return cls(n, tuple(image))

    def __call__(self, x: int) -> int:
        return self.image[x - 1]

    def then(self, other: "Permutation") -> "Permutation":
        if self.n != other.n:
            raise SizeMismatchError(f"cannot compose permutations of [{self.n}] and [{other.n}]")
        return Permutation(self.n, tuple(other.image[x - 1] for x in self.image))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for x, y in enumerate(self.image, start=1):
            inv[y - 1] = x
        return Permutation(self.n, tuple(inv))

    @cached_property
    def cycles(self) -> Tuple[Tuple[int, ...], ...]:
        """Orbits, each starting at its minimum, sorted by minimum."""
        seen = bytearray(self.n + 1)
        out: List[Tuple[int, ...]] = []
        for start in range(1, self.n + 1):
            if seen[start]:
                continue
            orbit = []
            x = start
            while not seen[x]:
                seen[x] = 1
                orbit.append(x)
                x = self.image[x - 1]
            out.append(tuple(orbit))
        return tuple(out)

    def cycle_count(self) -> int:
        return len(self.cycles)

    def __str__(self) -> str:
        nontrivial = [c for c in self.cycles if len(c) > 1]
        if not nontrivial:
            return "id"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in nontrivial)


@dataclass(frozen=True, order=True)
class Transposition:
    """The transposition (a, b), normalised so that a < b."""
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise RangeError(f"transposition needs two distinct points, got ({self.a}, {self.b})")
        if self.a > self.b:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)

    @property
    def gap(self) -> int:
        return self.b - self.a

    def as_permutation(self, n: int) -> Permutation:
        if self.b > n or self.a < 1:
            raise RangeError(f"transposition {self} outside [{n}]")
        return Permutation.from_cycles(n, [(self.a, self.b)])

    def to_list(self) -> List[int]:
        return [self.a, self.b]

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


def running_products(n: int, factors: Sequence[Transposition]) -> Iterable[List[int]]:
    """Yield the image list of each left-to-right prefix product, starting with the identity.

    The same list object is mutated in place between yields; copy it to keep a snapshot.
    """
    image = list(range(1, n + 1))
    where = list(range(n + 1))
    yield image
    for t in factors:
        if t.a < 1 or t.b > n:
            raise RangeError(f"transposition {t} outside [{n}]")
        pa, pb = where[t.a], where[t.b]
        image[pa - 1], image[pb - 1] = t.b, t.a
        where[t.a], where[t.b] = pb, pa
        yield image


@dataclass(frozen=True)
class Factorization:
    """A minimal factorization of the n-cycle: n-1 transpositions whose product is (1,...,n)."""
    n: int
    factors: Tuple[Transposition, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        factors = tuple(
            t if isinstance(t, Transposition) else Transposition(*t) for t in self.factors
        )
        object.__setattr__(self, "factors", factors)
        if self.n < 1:
            raise RangeError(f"ground set size must be positive, got {self.n}")
        if len(factors) != self.n - 1:
            raise InvalidFactorizationError(
                f"expected {self.n - 1} factors for n={self.n}, got {len(factors)}"
            )
        final: List[int] = []
        for final in running_products(self.n, factors):
            pass
        if tuple(final) != Permutation.long_cycle(self.n).image:
            raise InvalidFactorizationError("product of the factors is not the n-cycle")

    def __len__(self) -> int:
        return len(self.factors)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema": FACTORIZATION_SCHEMA,
            "n": self.n,
            "factors": [t.to_list() for t in self.factors],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Factorization":
        return cls(
            n=int(data["n"]),
            factors=tuple(Transposition(int(a), int(b)) for a, b in data.get("factors", [])),
        )
