import logging
import os
import sys
from typing import Any, Optional

import structlog

_configured = False


def _configure(level: int) -> None:
    global _configured
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s'))
    root = logging.getLogger("minfact")
    root.handlers[:] = [handler]
    root.propagate = False
    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.stdlib.filter_by_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.format_exc_info,
            structlog.processors.KeyValueRenderer(key_order=["event"], sort_keys=True),
        ],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )
    _configured = True


def _level_of(level: Optional[str]) -> int:
    name = (level or os.getenv("LOG_LEVEL") or "INFO").upper()
    return getattr(logging, name, logging.INFO)


def setup_logger(name: str, level: Optional[str] = None) -> Any:
    """Set up a structured logger with consistent formatting on stderr.

    All minfact loggers live under the ``minfact`` namespace so one handler serves them.
    """
    if not _configured:
        _configure(_level_of(level))
    qualified = name if name.startswith("minfact") else f"minfact.{name}"
    logging.getLogger("minfact").setLevel(_level_of(level))
    return structlog.get_logger(qualified)


def get_logger(name: str) -> Any:
    """Module-level logger for services; configures defaults on first use."""
    if not _configured:
        _configure(_level_of(None))
        logging.getLogger("minfact").setLevel(_level_of(None))
    return structlog.get_logger(name if name.startswith("minfact") else f"minfact.{name}")
