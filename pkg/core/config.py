import logging
from typing import Optional

from pydantic_settings import BaseSettings, PydanticBaseSettingsSource


class Settings(BaseSettings):
    MAX_M: int = 100
    P_DENOMINATOR_LIMIT: int = 200
    GRID_POINTS_PER_INTERVAL: int = 100
    SEED: int = 20110523
    MAX_K: int = 10_000  # ratio sweep for alpha_k / beta_k
    ENDPOINT_SAMPLES: int = 200
    GAMMA_GRID_POINTS: int = 1000
    DERIVATIVE_SAMPLES: int = 50
    WORKERS: int = 1
    LOG_LEVEL: str = "WARNING"
    LOG_FILE: Optional[str] = None

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        # Certificates depend on flags only: no environment, no .env file.
        return (init_settings,)


settings = Settings()

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


def configure_logging(level: str = settings.LOG_LEVEL, log_file: Optional[str] = settings.LOG_FILE) -> None:
    """Route log records to stderr and, optionally, a file."""
    handlers: list[logging.Handler] = [logging.StreamHandler()]
    if log_file:
        handlers.append(logging.FileHandler(log_file, encoding="utf-8"))
    logging.basicConfig(level=level.upper(), format=LOG_FORMAT, handlers=handlers, force=True)
