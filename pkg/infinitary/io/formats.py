"""Output formats for curves, check reports and trajectories."""

from enum import Enum
import json
import math
import os
from pathlib import Path
import sys
import tempfile
from typing import Iterable, Optional, Union

import pandas as pd

SIGNIFICANT_DIGITS = 12
FLOAT_FORMAT = f"%.{SIGNIFICANT_DIGITS}g"

PathLike = Union[str, Path]


class OutputFormat(Enum):
    """Supported output formats."""

    CSV = "csv"
    JSONL = "jsonl"

    @classmethod
    def from_extension(cls, filename: str) -> "OutputFormat":
        """Format from a file extension; CSV unless the name ends in .jsonl or .ndjson."""
        ext = str(filename).lower().rsplit(".", 1)[-1]
        return cls.JSONL if ext in ("jsonl", "ndjson") else cls.CSV


def _rounded(value):
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return None
        return float(f"{value:.{SIGNIFICANT_DIGITS}g}")
    if hasattr(value, "item"):
        return _rounded(value.item())
    return value


def render(frame: pd.DataFrame, fmt: OutputFormat = OutputFormat.CSV) -> str:
    """Frame as CSV (header row, LF endings) or JSON lines, floats at 12 significant digits."""
    if fmt is OutputFormat.CSV:
        return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    lines = [
        json.dumps({str(k): _rounded(v) for k, v in record.items()})
        for record in frame.to_dict(orient="records")
    ]
    return "".join(line + "\n" for line in lines)


def atomic_write(text: str, path: Optional[PathLike]) -> None:
    """Write UTF-8 text to a temporary file beside ``path`` and rename it into place.

    ``path=None`` writes to stdout.
    """
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_rows(frame: pd.DataFrame, path: Optional[PathLike] = None,
               fmt: OutputFormat = OutputFormat.CSV) -> None:
    """Serialise a frame atomically (see ``render`` and ``atomic_write``)."""
    atomic_write(render(frame, fmt), path)


def write_trajectories(trajectories: Iterable, path: Optional[PathLike] = None) -> None:
    """One record per trajectory: its symbol glyphs followed by a newline."""
    atomic_write("".join(t.to_text() for t in trajectories), path)
