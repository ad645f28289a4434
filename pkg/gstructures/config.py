"""
Runtime configuration using Pydantic Settings
"""

from pydantic_settings import BaseSettings
from pydantic import Field
from functools import lru_cache


class Settings(BaseSettings):
    """Settings loaded from environment variables and an optional .env file"""

    # Application
    app_name: str = "gstructures"
    app_version: str = "1.0.0"
    debug: bool = False

    # Logging
    log_level: str = Field(default="INFO", description="Root log level for the CLI")
    log_format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    # Parallel condition checks
    worker_threads: int = Field(
        default=1,
        ge=1,
        validation_alias="gstructures_threads",
        description="Threads used for independent residual checks",
    )

    # Numeric positivity sampling
    positivity_samples: int = Field(default=16, ge=1)
    positivity_tolerance: float = Field(default=1e-9, gt=0)
    positivity_seed: int = 0

    # Output
    json_indent: int = 2

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = False
        populate_by_name = True


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance"""
    return Settings()


# Convenience alias
settings = get_settings()
