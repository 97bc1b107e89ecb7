import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Optional, TextIO

import pandas as pd

from src.core.partitions import Partition
from src.core.types import OutputFormat


@dataclass
class CommandResult:
    """
    What a subcommand produced: human readable lines, a JSON-able payload and the exit code.
    """

    text: list[str]
    payload: Any
    exit_code: int = 0
    tables: list[pd.DataFrame] = field(default_factory=list)


def partition_values_frame(
    values: Mapping[Partition, Fraction], column: str = "value"
) -> pd.DataFrame:
    return pd.DataFrame(
        {column: [str(value) for value in values.values()]},
        index=[str(omega) for omega in values],
    )


def partition_values_json(values: Mapping[Partition, Fraction]) -> dict[str, str]:
    return {str(omega): str(value) for omega, value in values.items()}


def emit(result: CommandResult, fmt: OutputFormat, stream: Optional[TextIO] = None):
    stream = stream or sys.stdout
    if fmt == "json":
        stream.write(json.dumps(result.payload, indent=2) + "\n")
        return
    for line in result.text:
        stream.write(line + "\n")
    for table in result.tables:
        stream.write(table.to_string() + "\n")
