"""Entropy-based error correction: dwell time times information potential."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from entropytrack.errors import DimensionMismatch, InvalidParameter
from entropytrack.perception.entropy_map import EntropyMap, normalize_unit
from entropytrack.tracking.dwell import DwellMap

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorrectedMap:
    """Weighted milliseconds per cell; zero wherever the entropy weight is zero."""
    values: np.ndarray
    cell_size: int = 1

    @property
    def width(self) -> int:
        return int(self.values.shape[1])

    @property
    def height(self) -> int:
        return int(self.values.shape[0])

    def total(self) -> float:
        return float(self.values.sum())


def block_mean(values: np.ndarray, cell_size: int) -> np.ndarray:
    """Mean over each cell_size x cell_size block; edge blocks average only
    the pixels they actually cover."""
    if cell_size < 1:
        raise InvalidParameter(f"cell size must be >= 1, got {cell_size}")
    if cell_size == 1:
        return values.astype(np.float64, copy=True)
    height, width = values.shape
    row_starts = np.arange(0, height, cell_size)
    col_starts = np.arange(0, width, cell_size)
    sums = np.add.reduceat(np.add.reduceat(values.astype(np.float64), row_starts, axis=0), col_starts, axis=1)
    row_counts = np.diff(np.append(row_starts, height))
    col_counts = np.diff(np.append(col_starts, width))
    return sums / np.outer(row_counts, col_counts)


def downsample_entropy(em: EntropyMap, cell_size: int) -> np.ndarray:
    """Unit-normalized entropy averaged onto the dwell map's cell grid."""
    return block_mean(normalize_unit(em), cell_size)


def apply_correction(dwell: DwellMap, weights: np.ndarray) -> CorrectedMap:
    """values[i, j] = dwell[i, j] * weights[i, j]. No renormalization: dwell
    discarded in contentless cells is simply gone."""
    if dwell.dwell.shape != weights.shape:
        raise DimensionMismatch(dwell.dwell.shape, weights.shape, what="heat map and entropy weights")
    values = dwell.dwell * weights
    logger.info(
        "Correction kept %.0f of %.0f ms (%.1f%%)",
        values.sum(), dwell.total(), 100.0 * values.sum() / dwell.total() if dwell.total() > 0 else 0.0,
    )
    return CorrectedMap(values=values, cell_size=dwell.cell_size)


def correct(dwell: DwellMap, em: EntropyMap) -> CorrectedMap:
    """Downsample ``em`` to the dwell grid, then apply it."""
    return apply_correction(dwell, downsample_entropy(em, dwell.cell_size))
