"""JSON serialisation of comparison results. Floats keep full precision;
rounding is for the human-readable tables only."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Mapping, Optional

from entropytrack.analysis.metrics import CenterOfGravity, ComparisonReport, distance_matrix


@dataclass(frozen=True)
class ReportParams:
    window: Optional[int] = None
    cell_size: Optional[int] = None
    idle_cap: Optional[float] = None
    epsilon: Optional[float] = None


def _params(params: ReportParams) -> dict[str, Any]:
    # Unknown parameters are left out.
    return {k: v for k, v in asdict(params).items() if v is not None}


def _point(c: CenterOfGravity) -> dict[str, float]:
    return {"x": c.x, "y": c.y}


def report_to_dict(report: ComparisonReport, params: ReportParams) -> dict[str, Any]:
    return {
        "correlation": report.correlation,
        "cog_a": _point(report.cog_a),
        "cog_b": _point(report.cog_b),
        "distance": report.distance,
        "params": _params(params),
    }


def write_report(path: str | Path, report: ComparisonReport, params: ReportParams) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report_to_dict(report, params), indent=2) + "\n", encoding="utf-8")
    return path


def write_centers(path: str | Path, centers: Mapping[str, CenterOfGravity], params: ReportParams) -> Path:
    """Centers of gravity of named maps plus their pairwise distances."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = {
        "centers": {name: _point(c) for name, c in centers.items()},
        "distances": distance_matrix(centers),
        "params": _params(params),
    }
    path.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
    return path
