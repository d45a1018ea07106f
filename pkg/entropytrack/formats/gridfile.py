"""Plain-text grid format.

    gridmap v1 <width> <height> <cell_size>
    <height> lines of <width> space-separated reals

Values are written with Python's shortest round-trip repr, so write -> read
returns identical floats.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from entropytrack.errors import GridFormatError, MissingInput

logger = logging.getLogger(__name__)

MAGIC = "gridmap"
VERSION = "v1"


@dataclass(frozen=True)
class GridFile:
    values: np.ndarray  # (height, width), finite, >= 0
    cell_size: int = 1

    @property
    def width(self) -> int:
        return int(self.values.shape[1])

    @property
    def height(self) -> int:
        return int(self.values.shape[0])


def format_grid(values: np.ndarray, cell_size: int = 1) -> str:
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 2 or values.size == 0:
        raise ValueError(f"grid must be a non-empty 2D array, got shape {values.shape}")
    if not np.all(np.isfinite(values)) or np.any(values < 0):
        raise ValueError("grid values must be finite and non-negative")
    height, width = values.shape
    lines = [f"{MAGIC} {VERSION} {width} {height} {cell_size}"]
    # + 0.0 turns -0.0 into 0.0
    for row in values + 0.0:
        lines.append(" ".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def write_grid(path: str | Path, values: np.ndarray, cell_size: int = 1) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_grid(values, cell_size), encoding="utf-8")
    logger.debug("Wrote grid %s (%dx%d, cell=%d)", path, values.shape[1], values.shape[0], cell_size)
    return path


def parse_grid(text: str, name: str = "<grid>") -> GridFile:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GridFormatError(f"{name}: empty grid file")

    header = lines[0].split()
    if len(header) != 5 or header[0] != MAGIC or header[1] != VERSION:
        raise GridFormatError(f"{name}: bad header {lines[0]!r} (expected '{MAGIC} {VERSION} <width> <height> <cell_size>')")
    try:
        width, height, cell_size = (int(v) for v in header[2:])
    except ValueError:
        raise GridFormatError(f"{name}: non-integer dimensions in header {lines[0]!r}") from None
    if width < 1 or height < 1 or cell_size < 1:
        raise GridFormatError(f"{name}: dimensions must be positive, got {width}x{height} cell={cell_size}")

    body = lines[1:]
    if len(body) != height:
        raise GridFormatError(f"{name}: header declares {height} rows, found {len(body)}")

    values = np.empty((height, width), dtype=np.float64)
    for i, line in enumerate(body):
        fields = line.split()
        if len(fields) != width:
            raise GridFormatError(f"{name}: row {i + 1} has {len(fields)} values, expected {width}")
        try:
            row = [float(f) for f in fields]
        except ValueError as e:
            raise GridFormatError(f"{name}: row {i + 1}: {e}") from None
        if any(not math.isfinite(v) or v < 0 for v in row):
            raise GridFormatError(f"{name}: row {i + 1} has a negative or non-finite value")
        values[i] = row
    return GridFile(values=values, cell_size=cell_size)


def read_grid(path: str | Path) -> GridFile:
    path = Path(path)
    if not path.exists():
        raise MissingInput(f"grid file not found: {path}")
    return parse_grid(path.read_text(encoding="utf-8"), name=str(path))
