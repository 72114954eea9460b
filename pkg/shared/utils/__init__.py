from .logger import get_logger, setup_logger
from .rng import RngStream, as_generator

__all__ = ["setup_logger", "get_logger", "RngStream", "as_generator"]
