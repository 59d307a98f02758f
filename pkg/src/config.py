"""Runtime configuration loaded from the environment and an optional .env file."""

import os
import logging
from typing import Literal

from dotenv import load_dotenv
from pydantic import BaseModel, Field

# Configure logging
logger = logging.getLogger(__name__)

# Load environment variables from .env file
load_dotenv()

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
VALID_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseModel):
    """Effective settings for the CLI and the HTTP service."""

    field: Literal["R", "C"] = Field("R", description="Default base field for expressions")
    seed: int = Field(0, description="Default seed for randomized verifiers")
    trials: int = Field(100, ge=1, description="Random samples drawn per verifier run")
    log_level: str = Field("WARNING", description="Logging level used by entry points")
    host: str = Field("0.0.0.0", description="HTTP bind address")
    port: int = Field(8000, ge=1, le=65535, description="HTTP port")


def get_settings() -> Settings:
    """
    Read settings from the environment.

    Returns:
        Settings built from the GLN_* variables, with defaults for missing ones

    Raises:
        ValueError: If a variable is present but cannot be interpreted
    """
    field = os.getenv("GLN_FIELD", "R").strip().upper()
    log_level = os.getenv("GLN_LOG_LEVEL", "WARNING").strip().upper()
    if log_level not in VALID_LOG_LEVELS:
        logger.warning(f"Unknown GLN_LOG_LEVEL '{log_level}', falling back to WARNING")
        log_level = "WARNING"

    try:
        return Settings(
            field=field,
            seed=int(os.getenv("GLN_SEED", "0")),
            trials=int(os.getenv("GLN_TRIALS", "100")),
            log_level=log_level,
            host=os.getenv("GLN_HOST", "0.0.0.0"),
            port=int(os.getenv("GLN_PORT", "8000")),
        )
    except Exception as e:
        logger.error(f"Invalid configuration: {e}")
        raise ValueError(f"Invalid configuration: {str(e)}")


def configure_logging(level: str) -> None:
    """Configure root logging for an entry point."""
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format=LOG_FORMAT)
