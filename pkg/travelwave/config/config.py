from functools import lru_cache
from typing import Optional
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from .verification import VerificationSettings


BASE_DIR = Path(__file__).resolve().parent.parent.parent


class Settings(BaseSettings):
    # Project
    PROJECT_NAME: str = Field(default="travelwave")
    VERSION: str = Field(default="1.0.0")
    DESCRIPTION: str = "Closed-form traveling waves of the 2-body companion wave equations"

    NUM_THREADS: int = Field(default=4, ge=1)
    OUTPUT_DIR: str = Field(default="out")

    LOG_LEVEL: str = Field(default="INFO")
    LOG_FILE: Optional[str] = Field(default=None)
    LOG_JSON_FORMAT: bool = Field(default=False)

    VERIFICATION: VerificationSettings = Field(default_factory=VerificationSettings)

    model_config = SettingsConfigDict(
        env_file=str(BASE_DIR / ".env"),
        env_prefix="WAVE_",
        case_sensitive=False,
        extra="ignore",
        env_file_encoding="utf-8"
    )


settings = Settings()


@lru_cache
def get_settings() -> Settings:
    return Settings()
