"""
Toolkit configuration using Pydantic Settings.

Loads configuration from environment variables (prefix ``ADDEQUIV_``) with
.env file support.
"""
import logging
from functools import lru_cache
from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables."""

    # Fields
    MAX_FIELD_ORDER: int = 16  # Largest accepted q; q^2 - 1 <= 255 keeps exhaustive checks fast

    # Minimum distance
    DISTANCE_BUDGET: int = 2 ** 26  # Max codewords enumerated before giving up
    DISTANCE_CHUNK: int = 4096  # Target size of the vectorized low block
    DISTANCE_WORKERS: int = 1

    # Witness search
    WITNESS_SEARCH_BUDGET: int = 2 ** 24  # Max q^d candidates before returning Undecided
    SEARCH_BATCH_SIZE: int = 4096
    SEARCH_WORKERS: int = 1

    # Linear algebra
    PACKED_ELIMINATION: bool = True  # Bit-packed rows for q in {2, 4}

    # Brute-force oracle caps
    ORACLE_MAX_N: int = 4
    ORACLE_MAX_K: int = 6

    # Batch verification
    TABLE_WORKERS: int = 4

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    @field_validator('MAX_FIELD_ORDER')
    @classmethod
    def validate_max_field_order(cls, v: int) -> int:
        """Field tables are stored as uint8, so q^2 must stay below 256."""
        if not 2 <= v <= 16:
            raise ValueError('MAX_FIELD_ORDER must lie between 2 and 16')
        return v

    @field_validator(
        'DISTANCE_BUDGET', 'DISTANCE_CHUNK', 'WITNESS_SEARCH_BUDGET',
        'SEARCH_BATCH_SIZE', 'DISTANCE_WORKERS', 'SEARCH_WORKERS',
        'TABLE_WORKERS', 'ORACLE_MAX_N', 'ORACLE_MAX_K'
    )
    @classmethod
    def validate_positive(cls, v: int) -> int:
        """Budgets, batch sizes and worker counts must be positive."""
        if v < 1:
            raise ValueError('Value must be a positive integer')
        return v

    @field_validator('LOG_LEVEL')
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Only accept level names the logging module knows."""
        level = v.upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f'Unknown log level: {v}')
        return level

    # Model configuration
    model_config = SettingsConfigDict(
        env_prefix="ADDEQUIV_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra='ignore'
    )


@lru_cache()
def get_settings() -> Settings:
    """
    Get cached settings instance.

    Uses lru_cache to ensure settings are loaded only once.

    Returns:
        Settings instance
    """
    return Settings()
