"""Runtime configuration."""
from pathlib import Path
from typing import Any, Dict, Tuple, Union

import toml
from pydantic import BaseSettings, validator
from pydantic.env_settings import SettingsSourceCallable

from trilab._lattice import Rational


class Settings(BaseSettings):
    """Settings holds the defaults of analyses and simulations.

    Values come from keyword arguments or a ``[trilab]`` table in a TOML file, overridden by
    ``TRILAB_*`` environment variables.

    Attributes:
        threads: Upper bound on worker threads.
        margin: Inset of the analysed core from the window of a plane tiling.
        shard_trials: Number of Monte-Carlo walks per deterministic shard.
        max_steps: Default bound on descent steps.
        pixels_per_unit: SVG scale.
    """

    threads: int = 1
    margin: Rational = Rational(2)
    shard_trials: int = 16384
    max_steps: int = 32
    pixels_per_unit: int = 100

    class Config:  # noqa: D101, D106
        env_prefix = "TRILAB_"

        @classmethod
        def customise_sources(
            cls,
            init_settings: SettingsSourceCallable,
            env_settings: SettingsSourceCallable,
            file_secret_settings: SettingsSourceCallable,
        ) -> Tuple[SettingsSourceCallable, ...]:
            return env_settings, init_settings, file_secret_settings

    @validator("threads", "shard_trials", "pixels_per_unit")
    def _validate_positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError(f"must be at least 1, got {value}")
        return value

    @validator("max_steps")
    def _validate_max_steps(cls, value: int) -> int:
        if value < 0:
            raise ValueError(f"must be non-negative, got {value}")
        return value

    @validator("margin")
    def _validate_margin(cls, value: Any) -> Any:
        if value < 0:
            raise ValueError(f"must be non-negative, got {value}")
        return value

    @classmethod
    def from_path(cls, path: Union[str, Path]) -> "Settings":
        """Loads the ``[trilab]`` table of a TOML file."""
        data: Dict[str, Any] = toml.loads(Path(path).read_text()).get("trilab", {})
        return cls(**data)
