import time
from contextlib import contextmanager
from typing import Any, Iterator

from expsum.core.logging import app_logger


@contextmanager
def log_command(name: str, **params: Any) -> Iterator[None]:
    """
    Log start, finish and elapsed time of one CLI command.
    """
    start_time = time.time()
    log = app_logger.bind(command=name)
    log.info(f"Command: {name} - Params: {params}")

    try:
        yield
    except Exception as e:
        log.error(f"Error: {name} - Error: {str(e)}")
        raise

    process_time = time.time() - start_time
    log.info(f"Finished: {name} - Time: {process_time:.4f}s")
