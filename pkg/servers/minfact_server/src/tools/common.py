from typing import Any, Dict, Optional

from shared.config import RunConfig
from shared.utils.logger import get_logger

logger = get_logger(__name__)

# errors caused by the request itself rather than by a failed computation
USAGE_ERRORS = frozenset(
    {
        "ConfigError",
        "RangeError",
        "SizeMismatchError",
        "InfeasibleConditioningError",
        "EnumerationLimitError",
        "NotAPartitionError",
        "CrossingPartitionError",
        "InvalidFactorizationError",
        "PhiCodeError",
        "TypeError",
        "ValidationError",
    }
)


def error_result(tool: str, e: Exception, **context: Any) -> Dict[str, Any]:
    """The dict a tool returns instead of raising."""
    logger.error("tool_failed", tool=tool, kind=type(e).__name__, error=str(e))
    return {**context, "error": str(e), "error_kind": type(e).__name__}


def is_usage_error(result: Dict[str, Any]) -> bool:
    return result.get("error_kind") in USAGE_ERRORS


def resolve_k(n: int, K: Optional[int] = None, c: Optional[float] = None) -> int:
    """K as given, or floor(c sqrt(n)); validated like the CLI options."""
    return RunConfig.build(n=n, K=K, c=c).resolve_k()
