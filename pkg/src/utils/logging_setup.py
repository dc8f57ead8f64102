"""loguru sink configuration for CLI runs"""
#%%
#
from pathlib import Path
import sys

from loguru import logger


def configure_logging(verbose: bool = False, log_path: Path | None = None) -> None:
    """
    Purpose:
        Replace the default loguru sink with a stderr sink and, optionally, a log file.
    Args:
        verbose: Log at DEBUG instead of INFO.
        log_path: File sink next to the datasets; skipped when None.
    """
    level = "DEBUG" if verbose else "INFO"
    logger.remove()
    logger.add(sys.stderr, level=level, format="<green>{time:HH:mm:ss}</green> | <level>{level: <7}</level> | {message}")
    if log_path is not None:
        logger.add(log_path, level="DEBUG", mode="w", encoding="utf-8")
