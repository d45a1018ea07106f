"""False-color heat-map rendering, optionally blurred and composited over the
page screenshot. Presentation only: nothing here feeds back into metrics."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np
from PIL import Image, ImageDraw
from scipy.ndimage import correlate1d

from entropytrack.analysis.metrics import CenterOfGravity
from entropytrack.errors import DimensionMismatch, InvalidParameter
from entropytrack.tracking.dwell import grid_shape

logger = logging.getLogger(__name__)

RGB = Tuple[int, int, int]


@dataclass(frozen=True)
class ColorRamp:
    """Piecewise-linear palette over [0, 1]."""
    points: Tuple[Tuple[float, RGB], ...]

    def __post_init__(self) -> None:
        positions = [p for p, _ in self.points]
        if len(positions) < 2 or positions[0] != 0.0 or positions[-1] != 1.0:
            raise InvalidParameter(f"ramp must start at 0 and end at 1, got positions {positions}")
        if any(b <= a for a, b in zip(positions, positions[1:])):
            raise InvalidParameter(f"ramp positions must be strictly increasing, got {positions}")
        for _, color in self.points:
            if len(color) != 3 or any(not 0 <= c <= 255 for c in color):
                raise InvalidParameter(f"ramp colors must be 8-bit RGB triples, got {color}")

    def lookup(self, t: np.ndarray) -> np.ndarray:
        """Map values in [0, 1] to uint8 RGB, shape t.shape + (3,)."""
        positions = np.array([p for p, _ in self.points], dtype=np.float64)
        colors = np.array([c for _, c in self.points], dtype=np.float64)
        t = np.clip(np.asarray(t, dtype=np.float64), 0.0, 1.0)
        out = np.empty(t.shape + (3,), dtype=np.uint8)
        for ch in range(3):
            out[..., ch] = np.floor(np.interp(t, positions, colors[:, ch]) + 0.5)
        return out


DEFAULT_RAMP = ColorRamp((
    (0.0, (0, 0, 255)),
    (0.25, (0, 255, 255)),
    (0.5, (0, 255, 0)),
    (0.75, (255, 255, 0)),
    (1.0, (255, 0, 0)),
))

GRAY_RAMP = ColorRamp(((0.0, (0, 0, 0)), (1.0, (255, 255, 255))))


@dataclass(frozen=True)
class RenderOptions:
    blur_sigma: float = 8.0
    overlay_alpha: float = 0.6
    ramp: ColorRamp = field(default=DEFAULT_RAMP)
    zero_transparent: bool = True

    def __post_init__(self) -> None:
        if self.blur_sigma < 0:
            raise InvalidParameter(f"blur sigma must be >= 0, got {self.blur_sigma}")
        if not 0.0 <= self.overlay_alpha <= 1.0:
            raise InvalidParameter(f"overlay alpha must be in [0, 1], got {self.overlay_alpha}")


def gaussian_kernel(sigma: float) -> np.ndarray:
    """Normalized 1D Gaussian with radius ceil(3 sigma)."""
    radius = max(1, math.ceil(3.0 * sigma))
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    k = np.exp(-0.5 * (x / sigma) ** 2)
    return k / k.sum()


def gaussian_blur(m: np.ndarray, sigma: float) -> np.ndarray:
    """Separable Gaussian, edges replicated. sigma = 0 returns a copy."""
    if sigma < 0:
        raise InvalidParameter(f"blur sigma must be >= 0, got {sigma}")
    values = np.asarray(m, dtype=np.float64)
    if sigma == 0:
        return values.copy()
    k = gaussian_kernel(sigma)
    out = correlate1d(values, k, axis=0, mode="nearest")
    out = correlate1d(out, k, axis=1, mode="nearest")
    return np.maximum(out, 0.0)


def colorize(m: np.ndarray, ramp: ColorRamp = DEFAULT_RAMP, zero_transparent: bool = True) -> np.ndarray:
    """RGBA uint8 image. Each map is scaled by its own maximum; an all-zero
    map is fully transparent."""
    values = np.asarray(m, dtype=np.float64)
    h, w = values.shape
    rgba = np.zeros((h, w, 4), dtype=np.uint8)
    peak = float(values.max()) if values.size else 0.0
    if peak <= 0:
        return rgba
    rgba[..., :3] = ramp.lookup(values / peak)
    rgba[..., 3] = 255
    if zero_transparent:
        rgba[values <= 0, 3] = 0
    return rgba


def overlay(background: np.ndarray, heat: np.ndarray, alpha: float) -> np.ndarray:
    """Source-over compositing of an RGBA heat layer (its alpha scaled by
    ``alpha``) onto an RGB background, rounded half up."""
    if not 0.0 <= alpha <= 1.0:
        raise InvalidParameter(f"overlay alpha must be in [0, 1], got {alpha}")
    if background.shape[:2] != heat.shape[:2]:
        raise DimensionMismatch(background.shape[:2], heat.shape[:2], what="background and heat map")
    a = (heat[..., 3:4].astype(np.float64) / 255.0) * alpha
    out = background[..., :3].astype(np.float64) * (1.0 - a) + heat[..., :3].astype(np.float64) * a
    return np.clip(np.floor(out + 0.5), 0, 255).astype(np.uint8)


def upscale(values: np.ndarray, cell_size: int, width: int, height: int) -> np.ndarray:
    """Nearest-neighbour expansion of a cell grid to width x height pixels."""
    expected = grid_shape(width, height, cell_size)
    if values.shape != expected:
        raise DimensionMismatch(values.shape, expected, what=f"grid (cell size {cell_size}) and {width}x{height} page")
    if cell_size == 1:
        return np.asarray(values, dtype=np.float64)
    big = np.repeat(np.repeat(values, cell_size, axis=0), cell_size, axis=1)
    return big[:height, :width].astype(np.float64)


def mark_center(rgb: np.ndarray, center: CenterOfGravity, color: RGB = (255, 255, 255), size: int = 12) -> np.ndarray:
    """Draw a crosshair with a dark outline at a center of gravity."""
    mode = "RGBA" if rgb.shape[2] == 4 else "RGB"
    im = Image.fromarray(np.ascontiguousarray(rgb))
    draw = ImageDraw.Draw(im)
    cx, cy = round(center.x), round(center.y)
    outline = (0, 0, 0, 255) if mode == "RGBA" else (0, 0, 0)
    fill = (*color, 255) if mode == "RGBA" else color
    for width, ink in ((5, outline), (1, fill)):
        draw.line([(cx - size, cy), (cx + size, cy)], fill=ink, width=width)
        draw.line([(cx, cy - size), (cx, cy + size)], fill=ink, width=width)
    return np.array(im, dtype=np.uint8)


def render_map(
    values: np.ndarray,
    cell_size: int = 1,
    options: RenderOptions = RenderOptions(),
    background: np.ndarray | None = None,
    centers: Sequence[CenterOfGravity] = (),
) -> np.ndarray:
    """Upscale, blur, colorize and (with a background) composite a map.

    Returns RGB when a background is given, RGBA otherwise.
    """
    if background is not None:
        height, width = background.shape[:2]
    else:
        height, width = values.shape[0] * cell_size, values.shape[1] * cell_size
    pixels = upscale(values, cell_size, width, height)
    blurred = gaussian_blur(pixels, options.blur_sigma)
    heat = colorize(blurred, options.ramp, options.zero_transparent)
    image = heat if background is None else overlay(background, heat, options.overlay_alpha)
    for c in centers:
        image = mark_center(image, c)
    logger.debug("Rendered %dx%d map (sigma=%.1f, alpha=%.2f)", width, height, options.blur_sigma, options.overlay_alpha)
    return image


def colorize_levels(levels: np.ndarray, ramp: ColorRamp = DEFAULT_RAMP) -> np.ndarray:
    """Opaque RGB for 0-255 levels on a fixed scale (no per-map rescaling)."""
    return ramp.lookup(np.asarray(levels, dtype=np.float64) / 255.0)
