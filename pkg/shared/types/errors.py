from typing import Optional, Tuple


class MinfactError(ValueError):
    """Base class for every domain error raised by the minfact packages."""


class SizeMismatchError(MinfactError):
    """Two objects on different ground sets were combined."""


class RangeError(MinfactError):
    """An index or size argument lies outside its admissible range."""


class InvalidFactorizationError(MinfactError):
    """A transposition sequence is not a minimal factorization of the n-cycle."""


class NotAPartitionError(MinfactError):
    """A block list does not partition [n]."""


class PhiCodeError(MinfactError):
    """A (H, W) code is outside the image of the tree encoding."""

    def __init__(self, condition: str, message: str):
        super().__init__(f"{condition}: {message}")
        self.condition = condition


class BridgeConditionError(MinfactError):
    """A walk does not end where a bridge must end."""


class ConvergenceError(MinfactError):
    """A numerical solve did not reach its tolerance."""

    def __init__(self, message: str, residual: float, iterations: int):
        super().__init__(f"{message} (residual={residual:.3e}, iterations={iterations})")
        self.residual = residual
        self.iterations = iterations


class InfeasibleConditioningError(MinfactError):
    """The conditioning event has probability zero."""


class RejectionBudgetError(MinfactError):
    """A rejection sampler ran out of attempts."""

    def __init__(self, message: str, attempts: int):
        super().__init__(f"{message} after {attempts} attempts")
        self.attempts = attempts


class CrossingChordError(MinfactError):
    """Two chords of a would-be lamination cross in the open disk."""

    def __init__(self, first: Tuple, second: Tuple, message: Optional[str] = None):
        super().__init__(message or f"chords {first} and {second} cross")
        self.pair = (first, second)


class EnumerationLimitError(MinfactError):
    """An exhaustive enumeration was requested beyond its supported size."""


class ConfigError(MinfactError):
    """A run configuration is invalid."""


class CrossingPartitionError(NotAPartitionError):
    """A partition of [n] has two blocks whose convex hulls cross."""
