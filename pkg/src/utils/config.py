"""
Runtime settings for qptlab.
"""

import os
from typing import Dict, Any
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


def _default_threads() -> int:
    return os.cpu_count() or 1


class Settings(BaseSettings):
    """Process-wide settings read from QPTLAB_* environment variables or a .env file."""

    model_config = SettingsConfigDict(
        env_prefix="QPTLAB_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Worker pool
    threads: int = Field(default_factory=_default_threads, ge=1)

    # Logging Settings
    log_level: str = Field("INFO")
    log_format: str = Field("%(asctime)s - %(name)s - %(levelname)s - %(message)s")

    # Output Settings
    output_dir: str = Field("results")
    # wall time makes reruns differ byte-wise, so it is opt-in
    record_wall_time: bool = Field(False)

    # Basis-state batch width for batched kernels (OTOC traces)
    chunk_size: int = Field(256, ge=1)

    def to_dict(self) -> Dict[str, Any]:
        """Convert settings to dictionary."""
        return self.model_dump()

    @classmethod
    def from_file(cls, config_path: str) -> "Settings":
        """Load settings from an env-style file, falling back to the environment."""
        if os.path.exists(config_path):
            return cls(_env_file=config_path)
        return cls()
