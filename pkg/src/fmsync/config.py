from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Self

from pydantic import BaseModel, Field, ValidationError, model_validator

from fmsync.exception import ConfigError
from fmsync.share import get_share_dir
from fmsync.utils.logging import logger
from fmsync.utils.rational import parse_rational_loose


class MachineControl(BaseModel):
    depth_cap: int = Field(default=4, description="Highest divide-signal type emitted")
    strict_pairs: bool = Field(
        default=False, description="Abort when one signal belongs to two collision pairs"
    )


class RunControl(BaseModel):
    max_events: int = Field(default=200_000, description="Event batches before giving up")
    horizon: str | None = Field(
        default=None, description="Stop after this time, as a rational such as 9/2"
    )

    @model_validator(mode="after")
    def validate_run(self) -> Self:
        if self.max_events < 1:
            raise ValueError("max_events must be positive")
        if self.horizon is not None:
            if parse_rational_loose(self.horizon) < 0:
                raise ValueError("horizon must not be negative")
        return self

    def horizon_value(self) -> Fraction | None:
        return None if self.horizon is None else parse_rational_loose(self.horizon)


class OracleControl(BaseModel):
    hop_limit: int | None = Field(
        default=None, description="Path enumeration bound on cyclic graphs, default 2*|E|"
    )


class DiagramControl(BaseModel):
    scale: int = Field(default=240, description="Pixels per length and time unit")


class Config(BaseModel):
    """Main configuration for fmsync."""

    machine: MachineControl = Field(default_factory=MachineControl, description="FSSP machine")
    limits: RunControl = Field(default_factory=RunControl, description="Simulation limits")
    oracle: OracleControl = Field(default_factory=OracleControl, description="Oracles")
    diagram: DiagramControl = Field(default_factory=DiagramControl, description="SVG output")

    @model_validator(mode="after")
    def validate_model(self) -> Self:
        if self.machine.depth_cap < 1:
            raise ValueError("machine.depth_cap must be at least 1")
        if self.oracle.hop_limit is not None and self.oracle.hop_limit < 1:
            raise ValueError("oracle.hop_limit must be positive")
        if self.diagram.scale < 1:
            raise ValueError("diagram.scale must be positive")
        return self


def get_config_file() -> Path:
    return get_share_dir() / "config.json"


def get_default_config() -> Config:
    return Config()


def load_config(config_file: Path | None = None) -> Config:
    config_file = config_file or get_config_file()
    logger.debug("Loading config from file: {file}", file=config_file)

    if not config_file.exists():
        config = get_default_config()
        logger.debug("No config, writing default config: {config}", config=config)
        with open(config_file, "w", encoding="utf-8") as f:
            f.write(config.model_dump_json(indent=2, exclude_none=True))
        return config

    try:
        with open(config_file, encoding="utf-8") as f:
            data = json.load(f)
        return Config(**data)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Invalid JSON in configuration file: {e}") from e
    except ValidationError as e:
        raise ConfigError(f"Invalid configuration file: {e}") from e


def save_config(config: Config, config_file: Path | None = None) -> None:
    config_file = config_file or get_config_file()
    logger.debug("Saving config to file: {file}", file=config_file)
    with open(config_file, "w", encoding="utf-8") as f:
        f.write(config.model_dump_json(indent=2, exclude_none=True))
