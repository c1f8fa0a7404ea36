import os
import sys
from typing import Any, Dict, Optional

from loguru import logger

from expsum.core.config import settings


def _file_sink_options() -> Dict[str, Any]:
    return {
        "format": settings.LOG_FORMAT,
        "rotation": settings.LOG_ROTATION,
        "retention": settings.LOG_RETENTION,
        "compression": "zip",
    }


def setup_logging(level: Optional[str] = None) -> None:
    """
    Route expsum records to stderr and, when EXPSUM_LOG_FILE is set, to a
    rotating log file plus ``.error`` and ``.commands`` companions.
    """
    level = (level or settings.LOG_LEVEL).upper()

    logger.remove()
    logger.enable("expsum")
    logger.add(sys.stderr, format=settings.LOG_FORMAT, level=level, colorize=True)

    if not settings.LOG_FILE:
        return

    log_dir = os.path.dirname(settings.LOG_FILE)
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
    root, ext = os.path.splitext(settings.LOG_FILE)
    ext = ext or ".log"

    logger.add(settings.LOG_FILE, level=level, **_file_sink_options())
    logger.add(f"{root}.error{ext}", level="ERROR", **_file_sink_options())
    # records bound with command=<name> by expsum.utils.timing
    logger.add(
        f"{root}.commands{ext}",
        level=level,
        filter=lambda record: "command" in record["extra"],
        **_file_sink_options(),
    )


# Logger instance used across the package
app_logger = logger
