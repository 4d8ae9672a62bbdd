"""
Logging utilities for debug and information messages.

Everything goes to stderr; stdout is reserved for command results.
"""
import os
import sys
from datetime import datetime

LEVEL_ORDER = {"DEBUG": 10, "INFO": 20, "SUCCESS": 25, "WARNING": 30, "ERROR": 40}

_threshold = {"level": os.environ.get("TILINGLAB_LOG_LEVEL", "INFO").upper()}


def set_log_level(level):
    """Change the minimum level printed by debug_log."""
    level = level.upper()
    if level not in LEVEL_ORDER:
        raise ValueError(f"unknown log level: {level}")
    _threshold["level"] = level


def get_log_level():
    return _threshold["level"]


def debug_log(message, level="INFO", component="app"):
    """
    Debug logging with timestamps and component information

    Args:
        message (str): Log message to display
        level (str): Log level (DEBUG, INFO, SUCCESS, WARNING, ERROR)
        component (str): Component/module name for better organization
    """
    if LEVEL_ORDER.get(level, 20) < LEVEL_ORDER.get(_threshold["level"], 20):
        return

    timestamp = datetime.now().strftime("%H:%M:%S")

    level_colors = {
        "INFO": "🔷",
        "WARNING": "⚠️",
        "ERROR": "❌",
        "DEBUG": "🔍",
        "SUCCESS": "✅"
    }

    icon = level_colors.get(level, "📝")
    print(f"{icon} [{timestamp}] [{component}] {message}", file=sys.stderr)
