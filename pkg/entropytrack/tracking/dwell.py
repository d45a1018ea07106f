"""Accumulate tracking events into a dwell-time heat map."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from entropytrack.errors import DimensionMismatch, InvalidParameter
from entropytrack.tracking.events import Source, TrackingEvent

logger = logging.getLogger(__name__)

DEFAULT_IDLE_CAP_MS = 1000.0


@dataclass(frozen=True)
class DwellMap:
    """Cumulative milliseconds per cell, shape (rows, cols).

    ``empty_session`` is set when no event fell inside the page; the map is
    then all zeros.
    """
    dwell: np.ndarray
    cell_size: int = 1
    empty_session: bool = False

    @property
    def width(self) -> int:
        return int(self.dwell.shape[1])

    @property
    def height(self) -> int:
        return int(self.dwell.shape[0])

    def total(self) -> float:
        return float(self.dwell.sum())


def grid_shape(width: int, height: int, cell_size: int) -> tuple[int, int]:
    """(rows, cols) of a map covering width x height pixels."""
    return math.ceil(height / cell_size), math.ceil(width / cell_size)


def build_dwell_map(
    events: Sequence[TrackingEvent],
    width: int,
    height: int,
    cell_size: int = 1,
    idle_cap: float = DEFAULT_IDLE_CAP_MS,
    source: Source | None = None,
) -> DwellMap:
    """Credit each inter-sample interval, capped at ``idle_cap`` ms, to the
    cell holding the earlier sample. The last sample credits nothing, and
    samples outside the page are dropped rather than clamped to its edge."""
    if width < 1 or height < 1:
        raise InvalidParameter(f"page size must be at least 1x1, got {width}x{height}")
    if cell_size < 1:
        raise InvalidParameter(f"cell size must be >= 1, got {cell_size}")
    if idle_cap <= 0:
        raise InvalidParameter(f"idle cap must be > 0 ms, got {idle_cap}")

    if source is not None:
        events = [e for e in events if e.source == source]

    dwell = np.zeros(grid_shape(width, height, cell_size), dtype=np.float64)
    if not events:
        logger.warning("Empty session: no events%s", f" from source {source.value}" if source else "")
        return DwellMap(dwell=dwell, cell_size=cell_size, empty_session=True)

    ts = np.fromiter((e.timestamp for e in events), dtype=np.int64, count=len(events))
    xs = np.fromiter((e.x for e in events), dtype=np.int64, count=len(events))
    ys = np.fromiter((e.y for e in events), dtype=np.int64, count=len(events))

    inside = (xs >= 0) & (xs < width) & (ys >= 0) & (ys < height)
    if not inside.any():
        logger.warning("Empty session: none of %d events lies inside the %dx%d page", len(events), width, height)
        return DwellMap(dwell=dwell, cell_size=cell_size, empty_session=True)
    dropped = int((~inside).sum())
    if dropped:
        logger.info("Dropped %d of %d events outside the %dx%d page", dropped, len(events), width, height)

    durations = np.minimum(np.diff(ts).astype(np.float64), float(idle_cap))
    credited = inside[:-1]
    np.add.at(
        dwell,
        (ys[:-1][credited] // cell_size, xs[:-1][credited] // cell_size),
        durations[credited],
    )
    logger.debug("Dwell map %s cell=%d total=%.0f ms", dwell.shape, cell_size, dwell.sum())
    return DwellMap(dwell=dwell, cell_size=cell_size)


def merge_dwell_maps(maps: Sequence[DwellMap]) -> DwellMap:
    """Sum sessions into one map (several participants on the same page)."""
    if not maps:
        raise ValueError("merge_dwell_maps needs at least one map")
    first = maps[0]
    total = np.zeros_like(first.dwell)
    for m in maps:
        if m.dwell.shape != first.dwell.shape or m.cell_size != first.cell_size:
            raise DimensionMismatch(
                (*first.dwell.shape, first.cell_size), (*m.dwell.shape, m.cell_size), what="dwell maps"
            )
        total += m.dwell
    return DwellMap(dwell=total, cell_size=first.cell_size, empty_session=all(m.empty_session for m in maps))
