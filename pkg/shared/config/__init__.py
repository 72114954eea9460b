from .settings import DiagnosticThresholds, FrameSweep, RunConfig, Settings, get_settings

__all__ = ["DiagnosticThresholds", "FrameSweep", "RunConfig", "Settings", "get_settings"]
