import logging
from pathlib import Path
from typing import Any, Optional

import yaml
from pydantic import BaseModel, root_validator, validator

from src.core.cobordism import DEFAULT_MAX_DEGREE
from src.core.types import OutputFormat, SpectrumName

log = logging.getLogger(__name__)

config_file = Path(__file__).parent / "config" / "config.yml"

DEGREE_COMMANDS = {"generator", "ranks", "verify", "kernel", "smatrix"}


def load_config(path: Path = config_file) -> dict[str, Any]:
    with open(path, "r") as yamlfile:
        return yaml.load(yamlfile, Loader=yaml.FullLoader) or {}


def parse_q_range(text: str) -> range:
    """
    ``"0..4"`` is the inclusive range 0, ..., 4 and ``"3"`` the single degree 3.
    """
    start, sep, stop = text.partition("..")
    try:
        low = int(start)
        high = int(stop) if sep else low
    except ValueError:
        raise ValueError(f"Cannot read a q range from {text!r}, expected e.g. '0..4'.") from None
    if low < 0 or high < low:
        raise ValueError(f"Invalid q range {text!r}.")
    return range(low, high + 1)


class JobConfig(BaseModel):
    command: str
    d: Optional[int] = None
    r: Optional[int] = None
    q: Optional[str] = None
    expr: Optional[str] = None
    omega: Optional[str] = None
    chern: Optional[str] = None
    spectrum: SpectrumName = "MTU"
    format: OutputFormat = "text"
    max_degree: int = DEFAULT_MAX_DEGREE
    stabilization_k: int = 4
    progress: bool = False

    @validator("max_degree")
    def check_max_degree(cls, value: int) -> int:
        if value < 1:
            raise ValueError(f"max_degree must be at least 1 but got: {value}")
        if value > DEFAULT_MAX_DEGREE:
            log.warning(
                f"Degree guard raised to {value} (default {DEFAULT_MAX_DEGREE}); "
                f"large degrees may take a long time."
            )
        return value

    @validator("r")
    def check_r(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 0:
            raise ValueError(f"r must be non-negative but got: {value}")
        return value

    @validator("q")
    def check_q(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            parse_q_range(value)
        return value

    @root_validator(skip_on_failure=True)
    def check_degree_bounds(cls, values: dict[str, Any]) -> dict[str, Any]:
        command, d = values.get("command"), values.get("d")
        if command in DEGREE_COMMANDS:
            if d is None:
                raise ValueError(f"Command {command} needs --d.")
            max_degree = values["max_degree"]
            if command != "ranks" and not 1 <= d <= max_degree:
                raise ValueError(f"d must lie in [1, {max_degree}] but got: {d}")
            if command == "ranks" and d < 0:
                raise ValueError(f"d must be non-negative but got: {d}")
        return values

    @property
    def q_range(self) -> range:
        if self.q is None:
            return range(0, (self.d or 0) + 1)
        return parse_q_range(self.q)


def get_job_config(parsed_args: dict[str, Any], path: Optional[Path] = None) -> JobConfig:
    """
    YAML defaults, overridden key by key by the command line values that were actually given.
    """
    config = load_config(path or config_file)
    config.update({k: v for k, v in parsed_args.items() if v is not None})
    config.pop("config_file", None)
    return JobConfig(**config)
