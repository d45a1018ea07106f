from __future__ import annotations

from pathlib import Path
from typing import Callable, Iterable

import numpy as np
import pytest
from PIL import Image

from entropytrack.perception.images import GrayImage


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def write_png(tmp_path: Path) -> Callable[..., Path]:
    """Write an (h, w) gray or (h, w, 3) RGB uint8 array as PNG under tmp_path."""
    def _write(pixels: np.ndarray, name: str = "page.png") -> Path:
        path = tmp_path / name
        Image.fromarray(np.ascontiguousarray(pixels, dtype=np.uint8)).save(path, format="PNG")
        return path
    return _write


def gray(levels) -> GrayImage:
    return GrayImage(np.asarray(levels, dtype=np.uint8))


def point_masses(shape: tuple[int, int], points: Iterable[tuple[int, int, float]]) -> np.ndarray:
    """Map of zeros with mass m at pixel (x, y) for each (x, y, m)."""
    m = np.zeros(shape, dtype=np.float64)
    for x, y, mass in points:
        m[y, x] += mass
    return m
