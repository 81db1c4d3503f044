"""Run configuration."""

from enum import Enum
from pathlib import Path
from typing import Literal, Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .io.formats import OutputFormat


class LogLevel(str, Enum):
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"


class RunConfig(BaseSettings):
    """Settings shared by the command-line subcommands.

    Values come from explicit keyword arguments, then ``EM_*`` environment
    variables, then the defaults below.
    """

    model_config = SettingsConfigDict(env_prefix="EM_", extra="ignore")

    machine: Literal["even", "hpm", "bc"]
    p: float = 0.5
    q0: float = 1e-4
    mass_tol: float = 1e-6
    t_max: int = Field(10, ge=1)
    seed: int = 0
    out: Optional[Path] = None
    format: OutputFormat = OutputFormat.CSV
    length: int = Field(10_000, ge=1)
    max_words: int = Field(5_000_000, ge=1)
    jobs: int = Field(1, ge=1)
    log_level: LogLevel = LogLevel.WARNING

    @field_validator("p")
    @classmethod
    def _check_p(cls, v: float) -> float:
        if not 0.0 < v < 1.0:
            raise ValueError(f"p must lie in (0, 1), got {v}")
        return v

    @field_validator("q0")
    @classmethod
    def _check_q0(cls, v: float) -> float:
        if not 0.0 < v < 0.5:
            raise ValueError(f"q0 must lie in (0, 1/2), got {v}")
        return v

    @field_validator("mass_tol")
    @classmethod
    def _check_mass_tol(cls, v: float) -> float:
        if not 0.0 < v < 1.0:
            raise ValueError(f"mass_tol must lie in (0, 1), got {v}")
        return v
