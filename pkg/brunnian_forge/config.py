"""Configuration settings for brunnian_forge"""

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Runtime settings, overridable through BRUNNIAN_FORGE_* variables"""

    # Reidemeister search budget
    r3_depth: int = 6
    max_states: int = 50000

    # Component discard: U-components deleted together
    max_discard: int = 1

    # Prometheus exporter
    metrics_enabled: bool = True
    metrics_port: int = 9100

    # Log level for the stderr handler
    log_level: str = "WARNING"

    model_config = SettingsConfigDict(
        env_prefix="BRUNNIAN_FORGE_",
        env_file=".env_config",
        env_file_encoding="utf-8",
        extra="ignore",
    )


# Global settings instance
settings = Settings()
