from typing import Any, Literal, Optional

from pydantic import AnyHttpUrl, PositiveFloat, PositiveInt, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


def parse_log_level(v: Any) -> str:
    """Normalize a logging level given as a name or a number.
    Names are upper-cased; numeric levels are mapped to their names.
    Raises ValueError if the level is unknown.
    """
    names = {10: "DEBUG", 20: "INFO", 30: "WARNING", 40: "ERROR", 50: "CRITICAL"}
    try:
        if isinstance(v, int):
            return names[v]
        level = str(v).strip().upper()
        if level not in names.values():
            raise ValueError(f"Unknown log level: {v!r}")
        return level
    except KeyError as exc:
        raise ValueError(f"Unknown log level: {v!r}") from exc


class Settings(BaseSettings):
    """Library and CLI settings.
    Values come from GENERGY_* environment variables or a .env file; CLI flags
    override them per invocation.
    Attributes:
        PROJECT_NAME (str): Service name used in telemetry resources.
        VERSION (str): Package version.
        JOBS (Optional[int]): Worker processes for census and enumeration.
            None means the number of available CPUs.
        TOL_ABS (float): Default absolute classification tolerance.
        TOL_REL (float): Default relative classification tolerance.
        BORDERLINE_BAND (float): Width factor of the tolerance-sensitive band
            around epsilon used to count borderline graphs.
        EIGEN_METHOD (Literal): "jacobi" (default) or "lapack".
        EIGEN_MAX_SWEEPS (int): Jacobi sweep cap before giving up.
        EIGEN_OFF_TOL (float): Relative off-diagonal norm that stops Jacobi.
        EIGEN_RESIDUAL_TOL (float): Allowed reconstruction residual, relative
            to max(1, max|entry|).
        ZERO_CLAMP (float): Eigenvalues this close to zero are set to zero.
        MAX_ENUM_ORDER (int): Largest order the enumerator accepts.
        CHUNK_SIZE (int): Graphs per worker task.
        LOG_LEVEL (str): Logging level for the genergy logger.
        LOG_FORMAT (Literal): "text" or "json".
        OTLP_ENDPOINT (Optional[AnyHttpUrl]): OTLP/HTTP collector base URL.
        OTLP_TOKEN (Optional[str]): Basic auth token for the collector.
    Raises:
        ValueError: If any of the settings are invalid or cannot be parsed.
    """

    model_config = SettingsConfigDict(
        env_prefix="GENERGY_",
        env_file=".env",
        env_file_encoding="utf-8",
        env_ignore_empty=True,
        extra="ignore",
    )

    # Core Info
    PROJECT_NAME: str = "genergy"
    VERSION: str = "0.1.0"

    # Parallelism
    JOBS: Optional[PositiveInt] = None
    CHUNK_SIZE: PositiveInt = 256

    # Classification
    TOL_ABS: PositiveFloat = 1e-9
    TOL_REL: PositiveFloat = 1e-12
    BORDERLINE_BAND: PositiveFloat = 10.0

    # Eigensolver
    EIGEN_METHOD: Literal["jacobi", "lapack"] = "jacobi"
    EIGEN_MAX_SWEEPS: PositiveInt = 100
    EIGEN_OFF_TOL: PositiveFloat = 1e-12
    EIGEN_RESIDUAL_TOL: PositiveFloat = 1e-10
    ZERO_CLAMP: PositiveFloat = 1e-10

    # Enumeration
    MAX_ENUM_ORDER: PositiveInt = 10

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: Literal["text", "json"] = "text"

    # OTLP export (disabled unless an endpoint is set)
    OTLP_ENDPOINT: Optional[AnyHttpUrl] = None
    OTLP_TOKEN: Optional[str] = None

    @field_validator("LOG_LEVEL", mode="before")
    @classmethod
    def _normalize_log_level(cls, v: Any) -> str:
        return parse_log_level(v)


settings = Settings()
