from .errors import (
    BridgeConditionError,
    ConfigError,
    ConvergenceError,
    CrossingChordError,
    CrossingPartitionError,
    EnumerationLimitError,
    InfeasibleConditioningError,
    InvalidFactorizationError,
    MinfactError,
    NotAPartitionError,
    PhiCodeError,
    RangeError,
    RejectionBudgetError,
    SizeMismatchError,
)
from .lamination import Chord, Lamination
from .offspring import OffspringParams, SeriesEval
from .partition import NonCrossingPartition, SetPartition
from .paths import ChordRelationPair, PathPair, PhiCode, SampledPath
from .permutation import Factorization, Permutation, Transposition
from .tree import BLACK, WHITE, BiTypeTree, BlockLabelBounds, CornerLabeling, PlaneTree

__all__ = [
    "BLACK",
    "WHITE",
    "BiTypeTree",
    "BlockLabelBounds",
    "BridgeConditionError",
    "Chord",
    "ChordRelationPair",
    "ConfigError",
    "ConvergenceError",
    "CornerLabeling",
    "CrossingChordError",
    "CrossingPartitionError",
    "EnumerationLimitError",
    "Factorization",
    "InfeasibleConditioningError",
    "InvalidFactorizationError",
    "Lamination",
    "MinfactError",
    "NonCrossingPartition",
    "NotAPartitionError",
    "OffspringParams",
    "PathPair",
    "Permutation",
    "PhiCode",
    "PhiCodeError",
    "PlaneTree",
    "RangeError",
    "RejectionBudgetError",
    "SampledPath",
    "SeriesEval",
    "SetPartition",
    "SizeMismatchError",
    "Transposition",
]
