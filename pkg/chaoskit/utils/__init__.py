"""
Utilities package.
"""

from chaoskit.utils.logging import (
    setup_logging,
    get_logger,
    log_function_call,
    log_execution_time,
)

from chaoskit.utils.config import (
    load_settings,
    get_settings,
    reset_settings,
)

__all__ = [
    # Logging utilities
    'setup_logging',
    'get_logger',
    'log_function_call',
    'log_execution_time',

    # Configuration
    'load_settings',
    'get_settings',
    'reset_settings',
]
