"""
Settings loading from the environment.
"""

import os
from typing import Optional

from dotenv import load_dotenv

from chaoskit.models.base import ChaosKitSettings
from chaoskit.utils.logging import get_logger

# Initialize logger
logger = get_logger(__name__)

_settings: Optional[ChaosKitSettings] = None


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    text = raw.strip()
    # Accept 2^k as well as plain integers
    if text.startswith("2^"):
        return 2 ** int(text[2:])
    return int(text)


def load_settings() -> ChaosKitSettings:
    """
    Build settings from the environment (and a .env file when present).

    Returns:
        ChaosKitSettings instance
    """
    load_dotenv()
    settings = ChaosKitSettings(
        max_horizon=_env_int("CHAOSKIT_MAX_HORIZON", 2 ** 24),
        workers=_env_int("CHAOSKIT_WORKERS", 4),
        log_level=os.getenv("CHAOSKIT_LOG_LEVEL", "INFO"),
        log_file=os.getenv("CHAOSKIT_LOG_FILE"),
    )
    logger.debug(f"Loaded settings: {settings.model_dump()}")
    return settings


def get_settings() -> ChaosKitSettings:
    """Return the cached settings, loading them on first use."""
    global _settings
    if _settings is None:
        _settings = load_settings()
    return _settings


def reset_settings(settings: Optional[ChaosKitSettings] = None) -> None:
    """Replace (or drop) the cached settings."""
    global _settings
    _settings = settings
