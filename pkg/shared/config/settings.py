import math
import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Literal, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from shared.types.errors import ConfigError


class DiagnosticThresholds(BaseModel):
    """Tolerances of the statistical regression guards and exact-identity checks."""
    chi2_p_floor: float = 1e-3
    total_variation: float = 0.01
    borel_gap: float = 0.01
    ks_scaling: float = 0.05
    ks_bridge: float = 0.02
    ks_increment: float = 0.01
    hausdorff_median: float = 0.1
    local_limit: float = 0.05
    normalisation: float = 1e-6
    walk_oracle: float = 1e-10
    identity: float = 1e-12
    given_number: float = 1e-10
    ig_mean_relative: float = 0.01


class Settings(BaseModel):
    """Process-wide settings read from the environment (and a ``.env`` file if present)."""
    log_level: str = "INFO"
    threads: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1)
    hausdorff_delta: float = Field(default=2e-3, gt=0)
    output_dir: Path = Path(".")
    thresholds: DiagnosticThresholds = Field(default_factory=DiagnosticThresholds)

    @classmethod
    def from_env(cls) -> "Settings":
        load_dotenv()
        values: dict = {}
        if os.getenv("LOG_LEVEL"):
            values["log_level"] = os.environ["LOG_LEVEL"]
        if os.getenv("MINFACT_THREADS"):
            values["threads"] = os.environ["MINFACT_THREADS"]
        if os.getenv("MINFACT_HAUSDORFF_DELTA"):
            values["hausdorff_delta"] = os.environ["MINFACT_HAUSDORFF_DELTA"]
        if os.getenv("MINFACT_OUTPUT_DIR"):
            values["output_dir"] = os.environ["MINFACT_OUTPUT_DIR"]
        try:
            return cls(**values)
        except ValidationError as e:
            raise ConfigError(f"invalid environment settings: {e}") from e


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings.from_env()


class FrameSweep(BaseModel):
    """A sweep of c values; frame i uses k = floor(c_i * sqrt(n))."""
    c_min: float = Field(gt=0)
    c_max: float = Field(gt=0)
    count: int = Field(ge=1)

    @model_validator(mode="after")
    def _monotone(self) -> "FrameSweep":
        if self.c_max < self.c_min:
            raise ValueError(f"frames must be monotone: c_min={self.c_min} > c_max={self.c_max}")
        return self

    def values(self) -> list:
        if self.count == 1:
            return [self.c_min]
        step = (self.c_max - self.c_min) / (self.count - 1)
        return [self.c_min + i * step for i in range(self.count)]


class RunConfig(BaseModel):
    """Validated options of one CLI or tool invocation."""
    seed: Optional[int] = None
    n: Optional[int] = Field(default=None, ge=1)
    K: Optional[int] = Field(default=None, ge=0)
    c: Optional[float] = Field(default=None, gt=0)
    output: Optional[Path] = None
    format: Literal["json", "csv", "svg"] = "json"
    frames: Optional[FrameSweep] = None

    @field_validator("seed")
    @classmethod
    def _seed_is_64_bit(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and not -(2**63) <= value < 2**64:
            raise ValueError("seed must fit in 64 bits")
        return value

    @model_validator(mode="after")
    def _one_conditioning(self) -> "RunConfig":
        if self.K is not None and self.c is not None:
            raise ValueError("give exactly one of K or c")
        if self.K is not None and self.n is not None and self.K > self.n - 1:
            raise ValueError(f"K={self.K} exceeds n-1={self.n - 1}")
        return self

    @classmethod
    def build(cls, **values: Any) -> "RunConfig":
        try:
            return cls(**values)
        except ValidationError as e:
            raise ConfigError(str(e)) from e

    def require_seed(self) -> int:
        if self.seed is None:
            raise ConfigError("--seed is required for sampling commands")
        return self.seed

    def require_n(self) -> int:
        if self.n is None:
            raise ConfigError("--n is required")
        return self.n

    def resolve_k(self) -> int:
        """K as given, or floor(c * sqrt(n)) clipped to [1, n-1]."""
        n = self.require_n()
        if self.K is not None:
            return self.K
        if self.c is None:
            raise ConfigError("give one of --K or --c")
        return min(max(int(math.floor(self.c * math.sqrt(n))), 1), max(n - 1, 1))
