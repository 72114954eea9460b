from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterable, List, Tuple, Union

from .errors import RangeError

LAMINATION_SCHEMA = "minfact.lamination/1"

Angle = Union[Fraction, float]


@dataclass(frozen=True, order=True)
class Chord:
    """A chord of the unit disk between the points exp(-2*pi*i*s) and exp(-2*pi*i*t).

    Angles are fractions of a turn in [0, 1); discrete chords keep exact ``Fraction`` angles.
    """
    s: Angle
    t: Angle

    def __post_init__(self) -> None:
        s, t = self.s, self.t
        if not (0 <= s < 1 and 0 <= t < 1):
            raise RangeError(f"chord angles must lie in [0, 1), got ({s}, {t})")
        if t < s:
            object.__setattr__(self, "s", t)
            object.__setattr__(self, "t", s)

    @classmethod
    def between(cls, i: int, j: int, n: int) -> "Chord":
        """The chord joining vertices i and j of the regular n-gon (vertex n sits at angle 0)."""
        return cls(Fraction(i % n, n), Fraction(j % n, n))

    @property
    def is_point(self) -> bool:
        return self.s == self.t

    def endpoints(self) -> Tuple[Tuple[float, float], Tuple[float, float]]:
        return point_at(self.s), point_at(self.t)

    def length(self) -> float:
        return 2.0 * math.sin(math.pi * float(self.t - self.s))

    def to_list(self) -> List[Any]:
        return [_angle_out(self.s), _angle_out(self.t)]


def point_at(angle: Angle) -> Tuple[float, float]:
    theta = -2.0 * math.pi * float(angle)
    return math.cos(theta), math.sin(theta)


def _angle_out(angle: Angle) -> Any:
    if isinstance(angle, Fraction):
        return f"{angle.numerator}/{angle.denominator}"
    return float(angle)


def _angle_in(value: Any) -> Angle:
    if isinstance(value, str):
        return Fraction(value)
    return float(value)


@dataclass(frozen=True)
class Lamination:
    """A finite set of chords; ``n == 0`` marks continuum angles."""
    n: int
    chords: FrozenSet[Chord] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "chords", frozenset(self.chords))

    def __len__(self) -> int:
        return len(self.chords)

    def sorted_chords(self) -> List[Chord]:
        return sorted(self.chords)

    def union(self, other: Iterable[Chord]) -> "Lamination":
        return Lamination(self.n, self.chords | frozenset(other))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema": LAMINATION_SCHEMA,
            "n": self.n,
            "chords": [c.to_list() for c in self.sorted_chords()],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Lamination":
        return cls(
            n=int(data.get("n", 0)),
            chords=frozenset(Chord(_angle_in(s), _angle_in(t)) for s, t in data.get("chords", [])),
        )
