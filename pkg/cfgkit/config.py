"""
Configuration for cfgkit
Bounds for derivation search, expansion caps, enumeration defaults, caching and logging
"""

import os
from typing import Optional

from dotenv import load_dotenv


class Config:
    """Base configuration class."""

    # Derivation search
    DERIVATION_SEARCH_CAP = 200_000  # distinct visited sentential forms
    DEFAULT_MAX_STEPS = 12

    # Empty-rule elimination expands every subset of nullable occurrences in a rule
    MAX_NULLABLE_OCCURRENCES = 16

    # Enumeration and bounded equivalence
    DEFAULT_MAX_LEN = 6

    # Normalized grammar cache
    CNF_CACHE_SIZE = 256

    # Logging
    LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
    LOG_LEVEL = "WARNING"
    LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


class DevelopmentConfig(Config):
    """Development configuration."""

    LOG_LEVEL = "DEBUG"


class TestingConfig(Config):
    """Testing configuration."""

    CNF_CACHE_SIZE = 64


_config: Optional[Config] = None


def get_config() -> Config:
    """
    Get configuration based on environment

    Reads an optional .env file, picks the profile from CFGKIT_ENV and lets
    CFGKIT_LOG_LEVEL override the log level (unknown names are ignored).
    Algorithmic bounds are not environment-tunable.
    """
    global _config
    if _config is None:
        load_dotenv()
        env = os.environ.get("CFGKIT_ENV", "production").lower()

        if env == "development":
            config: Config = DevelopmentConfig()
        elif env == "testing":
            config = TestingConfig()
        else:
            config = Config()

        level = os.environ.get("CFGKIT_LOG_LEVEL", "").upper()
        if level in Config.LOG_LEVELS:
            config.LOG_LEVEL = level
        _config = config
    return _config
