"""
Logging utilities for chaoskit.
"""

import os
import logging
import functools
import time
from typing import Callable, Optional

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

_configured = False


def setup_logging(level: Optional[str] = None, log_file: Optional[str] = None) -> logging.Logger:
    """
    Set up logging for the package.

    Args:
        level: Level name; defaults to CHAOSKIT_LOG_LEVEL or INFO
        log_file: Optional log file path; defaults to CHAOSKIT_LOG_FILE

    Returns:
        The package root logger
    """
    global _configured

    level_name = (level or os.getenv("CHAOSKIT_LOG_LEVEL") or "INFO").upper()
    log_file = log_file or os.getenv("CHAOSKIT_LOG_FILE")

    root = logging.getLogger("chaoskit")
    root.setLevel(level_name)

    if not _configured:
        handlers = [logging.StreamHandler()]
        if log_file:
            # Create the log directory if it doesn't exist
            directory = os.path.dirname(log_file)
            if directory:
                os.makedirs(directory, exist_ok=True)
            handlers.append(logging.FileHandler(log_file))

        formatter = logging.Formatter(LOG_FORMAT)
        for handler in handlers:
            handler.setFormatter(formatter)
            root.addHandler(handler)
        _configured = True

    # Keep the server loggers in step with ours
    logging.getLogger("uvicorn").setLevel(level_name)
    logging.getLogger("fastapi").setLevel(level_name)

    return root


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger with the specified name.

    Args:
        name: Logger name

    Returns:
        Logger instance
    """
    return logging.getLogger(name)


def log_function_call(func: Callable) -> Callable:
    """
    Decorator to log function calls.

    Args:
        func: Function to decorate

    Returns:
        Decorated function
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        logger = get_logger(func.__module__)
        func_name = func.__qualname__

        logger.debug(f"Calling {func_name}")
        start_time = time.perf_counter()

        try:
            result = func(*args, **kwargs)
            elapsed_time = time.perf_counter() - start_time
            logger.debug(f"{func_name} completed in {elapsed_time:.3f}s")
            return result
        except Exception as e:
            elapsed_time = time.perf_counter() - start_time
            logger.error(f"{func_name} failed after {elapsed_time:.3f}s: {e}")
            raise

    return wrapper


def log_execution_time(func: Callable) -> Callable:
    """
    Decorator to log function execution time at INFO level.

    Args:
        func: Function to decorate

    Returns:
        Decorated function
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        start_time = time.perf_counter()
        result = func(*args, **kwargs)
        elapsed_time = time.perf_counter() - start_time
        get_logger(func.__module__).info(f"{func.__qualname__} executed in {elapsed_time:.3f}s")
        return result

    return wrapper
