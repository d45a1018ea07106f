"""Heat-map similarity: Pearson correlation, centers of gravity and the
Euclidean distance between them."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from entropytrack.errors import DimensionMismatch, ZeroMass, ZeroVariance

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CenterOfGravity:
    """Dwell-weighted mean position, in page pixels."""
    x: float
    y: float


@dataclass(frozen=True)
class ComparisonReport:
    correlation: float
    cog_a: CenterOfGravity
    cog_b: CenterOfGravity
    distance: float


def _as_matrix(m) -> np.ndarray:
    arr = np.asarray(m, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2D map, got shape {arr.shape}")
    return arr


def pearson(a, b) -> float:
    """Pearson product-moment coefficient over every cell (zeros included),
    flattened row-major."""
    a, b = _as_matrix(a), _as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(a.shape, b.shape)
    for name, m in (("first", a), ("second", b)):
        if m.size == 0 or np.ptp(m) == 0:
            raise ZeroVariance(f"{name} map is constant; correlation is undefined")

    # np.sum uses pairwise summation in a fixed order, so results are bit-stable.
    da = (a - a.mean()).ravel()
    db = (b - b.mean()).ravel()
    r = np.sum(da * db) / math.sqrt(np.sum(da * da) * np.sum(db * db))
    return float(min(1.0, max(-1.0, r)))


def _cell_centers(n: int, cell_size: int) -> np.ndarray:
    # Per-pixel maps use the integer pixel index; coarser cells use their center.
    if cell_size == 1:
        return np.arange(n, dtype=np.float64)
    return (np.arange(n, dtype=np.float64) + 0.5) * cell_size


def center_of_gravity(m, cell_size: int = 1) -> CenterOfGravity:
    """x = sum(m * x) / sum(m), likewise for y, over cell positions in pixels."""
    m = _as_matrix(m)
    total = float(m.sum())
    if not total > 0:
        raise ZeroMass("map has no mass; center of gravity is undefined")
    rows, cols = m.shape
    x = float(np.sum(m.sum(axis=0) * _cell_centers(cols, cell_size)) / total)
    y = float(np.sum(m.sum(axis=1) * _cell_centers(rows, cell_size)) / total)
    return CenterOfGravity(x=x, y=y)


def euclidean(p: CenterOfGravity, q: CenterOfGravity) -> float:
    return math.hypot(p.x - q.x, p.y - q.y)


def compare(a, b, cell_size: int = 1) -> ComparisonReport:
    a, b = _as_matrix(a), _as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(a.shape, b.shape)
    r = pearson(a, b)
    cog_a = center_of_gravity(a, cell_size)
    cog_b = center_of_gravity(b, cell_size)
    report = ComparisonReport(correlation=r, cog_a=cog_a, cog_b=cog_b, distance=euclidean(cog_a, cog_b))
    logger.info("Compared %s maps: r=%.4f distance=%.1f px", a.shape, r, report.distance)
    return report


def distance_matrix(centers: Mapping[str, CenterOfGravity]) -> dict[str, dict[str, float]]:
    """Pairwise distances between named centers, in insertion order."""
    return {a: {b: euclidean(pa, pb) for b, pb in centers.items()} for a, pa in centers.items()}


# ── human-readable tables ────────────────────────────────────────

def format_report(report: ComparisonReport, label_a: str = "A", label_b: str = "B") -> str:
    width = max(len(label_a), len(label_b), 5)
    return "\n".join([
        f"{'':<{width}}  {'x':>8}  {'y':>8}",
        f"{label_a:<{width}}  {report.cog_a.x:>8.1f}  {report.cog_a.y:>8.1f}",
        f"{label_b:<{width}}  {report.cog_b.x:>8.1f}  {report.cog_b.y:>8.1f}",
        "",
        f"correlation  {report.correlation:.4f}",
        f"distance     {report.distance:.1f}",
    ])


def format_centers_table(centers: Mapping[str, CenterOfGravity]) -> str:
    width = max([len(k) for k in centers] + [5])
    lines = [f"{'':<{width}}  {'x':>8}  {'y':>8}"]
    for name, c in centers.items():
        lines.append(f"{name:<{width}}  {c.x:>8.1f}  {c.y:>8.1f}")
    return "\n".join(lines)


def format_distance_table(centers: Mapping[str, CenterOfGravity]) -> str:
    names = list(centers)
    width = max([len(k) for k in names] + [5])
    matrix = distance_matrix(centers)
    lines = [" " * width + "".join(f"  {n:>{width}}" for n in names)]
    for a in names:
        lines.append(f"{a:<{width}}" + "".join(f"  {matrix[a][b]:>{width}.1f}" for b in names))
    return "\n".join(lines)
