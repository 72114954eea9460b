from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict


@dataclass(frozen=True)
class OffspringParams:
    """Parameters of the law mu(i) = a * b**i * (i+1)**(i-1) / i!.

    ``m`` is the mean and ``variance`` the variance of mu; ``b`` lies in (0, 1/e).
    """
    a: float
    b: float
    m: float
    variance: float

    @property
    def log_a(self) -> float:
        return math.log(self.a)

    @property
    def log_b(self) -> float:
        return math.log(self.b)

    def to_dict(self) -> Dict[str, Any]:
        return {"a": self.a, "b": self.b, "m": self.m, "variance": self.variance}


@dataclass(frozen=True)
class SeriesEval:
    """F(z), F'(z), F''(z) with a certified bound on the truncation error.

    ``method`` is ``"series"`` for the truncated power series and ``"lambert"`` for the
    closed form through the tree function (no truncation, ``tail_bound == 0``).
    """
    z: float
    value: float
    first: float
    second: float
    tail_bound: float
    terms: int
    method: str

    @property
    def mean(self) -> float:
        """G(z) = z F'(z) / F(z)."""
        return self.z * self.first / self.value
