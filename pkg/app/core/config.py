from typing import Optional

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    API_V1_STR: str = "/agcodes/v1"
    PROJECT_NAME: str = "AG quantum codes"

    # make_field refuses p^k at or above this order
    FIELD_ORDER_LIMIT: int = 2**32

    # codewords, see app.algebra.minweight
    EXHAUSTIVE_BUDGET: int = 10**8
    SEARCH_BUDGET: int = 10**7
    CHUNK_SIZE: int = 4096
    MINWEIGHT_WORKERS: int = 1

    LOG_LEVEL: str = "WARNING"
    SHOW_PROGRESS: bool = False

    class Config:
        env_file = ".env"


settings = Settings()


def load_settings(config_file: Optional[str] = None) -> Settings:
    """
    Builds a Settings instance, optionally reading budgets from a key=value file.

    Args:
        config_file (Optional[str]): Path to a dotenv-style file. Environment
            variables still take precedence over values in the file.

    Returns:
        Settings: The loaded settings.
    """

    if config_file is None:
        return Settings()
    return Settings(_env_file=config_file)


def apply_settings(new: Settings) -> None:
    """Copies new values onto the shared settings instance used as module defaults."""
    for name, value in new.model_dump().items():
        setattr(settings, name, value)
