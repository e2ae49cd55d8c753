"""
Configuration management for the Image Visibility Toolkit
"""
from typing import Optional

from pydantic import ValidationError as PydanticValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from app.core.exceptions import ConfigurationError, VisibilityToolkitError
from app.core.validation import InputValidator


class Settings(BaseSettings):
    # Logging Configuration
    LOG_LEVEL: str = "INFO"
    LOG_JSON: Optional[bool] = None  # None: console renderer on a TTY, JSON otherwise
    LOG_FILE: Optional[str] = None

    # Search grid defaults, "start:stop:step" per axis
    GRID_A1: str = "0:5:0.1"
    GRID_A2: str = "0:3:0.1"
    GRID_ALPHA: str = "0.1:1.0:0.1"
    GRID_BETA: str = "0.1:1.0:0.1"

    # Range handling for transformed brightness
    RANGE_MODE: str = "reject"

    # Optimizer thread pool size
    OPTIMIZER_WORKERS: int = 1

    # Report and export formatting
    REPORT_SIGNIFICANT_DIGITS: int = 6
    CSV_FLOAT_FORMAT: str = "%.10g"

    # Grey conversion for colour inputs
    GREY_CONVERSION: str = "luma"

    model_config = SettingsConfigDict(
        case_sensitive=True,
        env_file=".env",
        extra="ignore",
    )

    @field_validator("GRID_A1", "GRID_A2", "GRID_ALPHA", "GRID_BETA")
    @classmethod
    def validate_grid_axis(cls, v: str) -> str:
        try:
            InputValidator.parse_axis(v)
        except VisibilityToolkitError as e:
            raise ValueError(e.message)
        return v

    @field_validator("RANGE_MODE")
    @classmethod
    def validate_range_mode(cls, v: str) -> str:
        try:
            return InputValidator.validate_range_mode(v)
        except VisibilityToolkitError as e:
            raise ValueError(e.message)

    @field_validator("GREY_CONVERSION")
    @classmethod
    def validate_grey_conversion(cls, v: str) -> str:
        try:
            return InputValidator.validate_grey_conversion(v)
        except VisibilityToolkitError as e:
            raise ValueError(e.message)

    @field_validator("LOG_LEVEL")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        v = v.upper()
        if v not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown log level: {v}")
        return v

    @field_validator("OPTIMIZER_WORKERS", "REPORT_SIGNIFICANT_DIGITS")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("Value must be at least 1")
        return v


def get_settings(**overrides) -> Settings:
    """Load settings from the environment and .env; invalid values raise ConfigurationError"""
    try:
        return Settings(**overrides)
    except PydanticValidationError as e:
        errors = e.errors()
        problems = "; ".join(
            f"{'.'.join(str(part) for part in error['loc'])}: {error['msg']}" for error in errors
        )
        config_key = str(errors[0]["loc"][0]) if errors and errors[0]["loc"] else None
        raise ConfigurationError(f"Invalid settings: {problems}", config_key=config_key) from e


settings = get_settings()
