"""
Configuration settings for the pre-Lie-Rinehart kernel
"""
import logging
import sys
from pathlib import Path
from pydantic_settings import BaseSettings
from typing import Optional


class Settings(BaseSettings):
    """Application settings"""

    # Application Info
    APP_NAME: str = "plrk"
    APP_VERSION: str = "1.0.0"
    DEBUG: bool = False

    # Randomized checks
    PLRK_SEED: Optional[int] = None  # overrides --seed when set
    PLRK_DEFAULT_SEED: int = 20240601
    PLRK_FUZZ_SAMPLES: int = 25

    # Random structure bounds
    PLRK_MAX_RANK: int = 3
    PLRK_MAX_COEFF_DEGREE: int = 2

    # Free pre-Lie truncation (node count)
    PLRK_MAX_TREE_NODES: int = 5

    # Logging
    PLRK_LOG_LEVEL: str = "WARNING"

    # File Paths
    FIXTURE_PATH: str = str(Path(__file__).resolve().parent.parent / "fixtures" / "data")

    class Config:
        env_file = ".env"
        case_sensitive = True


def resolve_seed(cli_seed: Optional[int] = None) -> int:
    """
    Pick the seed for randomized subcommands

    Args:
        cli_seed: Value given on the command line, if any

    Returns:
        PLRK_SEED from the environment when set, else cli_seed, else the default seed
    """
    current = Settings()
    if current.PLRK_SEED is not None:
        return current.PLRK_SEED
    if cli_seed is not None:
        return cli_seed
    return current.PLRK_DEFAULT_SEED


def configure_logging(level: Optional[str] = None) -> None:
    """Route library logging to stderr at the configured level"""
    name = (level or settings.PLRK_LOG_LEVEL).upper()
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, name, logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


# Create settings instance
settings = Settings()
