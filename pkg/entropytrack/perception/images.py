"""Screenshot I/O and the grayscale view entropy is computed over."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from entropytrack.errors import ImageFormatError, MissingInput

logger = logging.getLogger(__name__)

# Fixed encoder settings so identical pixels always encode to identical bytes.
PNG_COMPRESS_LEVEL = 6


@dataclass(frozen=True)
class RasterImage:
    """8-bit RGB pixels, shape (height, width, 3)."""
    pixels: np.ndarray

    def __post_init__(self) -> None:
        px = self.pixels
        if px.ndim != 3 or px.shape[2] != 3 or px.shape[0] < 1 or px.shape[1] < 1:
            raise ValueError(f"RasterImage needs a non-empty (h, w, 3) array, got shape {px.shape}")
        if px.dtype != np.uint8:
            raise ValueError(f"RasterImage needs uint8 pixels, got {px.dtype}")

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])


@dataclass(frozen=True)
class GrayImage:
    """One 8-bit gray level per pixel, shape (height, width)."""
    levels: np.ndarray

    def __post_init__(self) -> None:
        lv = self.levels
        if lv.ndim != 2 or lv.size == 0:
            raise ValueError(f"GrayImage needs a non-empty 2D array, got shape {lv.shape}")
        if lv.dtype != np.uint8:
            raise ValueError(f"GrayImage needs uint8 levels, got {lv.dtype}")

    @property
    def width(self) -> int:
        return int(self.levels.shape[1])

    @property
    def height(self) -> int:
        return int(self.levels.shape[0])


def to_grayscale(img: RasterImage) -> GrayImage:
    """BT.601 luma, rounded half up: (299 R + 587 G + 114 B + 500) // 1000."""
    px = img.pixels.astype(np.uint32)
    luma = (299 * px[..., 0] + 587 * px[..., 1] + 114 * px[..., 2] + 500) // 1000
    return GrayImage(np.clip(luma, 0, 255).astype(np.uint8))


def load_png(path: str | Path) -> RasterImage:
    """Read a PNG screenshot as RGB. Any other container is rejected: lossy
    formats smear blank regions and destroy their zero entropy."""
    path = Path(path)
    if not path.exists():
        raise MissingInput(f"image not found: {path}")
    try:
        with Image.open(path) as im:
            fmt = im.format
            if fmt != "PNG":
                raise ImageFormatError(f"{path}: expected a PNG image, got {fmt or 'unknown format'}")
            if im.mode in ("RGBA", "LA", "PA") or (im.mode == "P" and "transparency" in im.info):
                # Transparent pixels are shown against white in a browser.
                rgba = im.convert("RGBA")
                canvas = Image.new("RGBA", rgba.size, (255, 255, 255, 255))
                canvas.alpha_composite(rgba)
                rgb = canvas.convert("RGB")
            else:
                rgb = im.convert("RGB")
            pixels = np.array(rgb, dtype=np.uint8)
    except UnidentifiedImageError as e:
        raise ImageFormatError(f"{path}: not a readable image ({e})") from e
    except OSError as e:
        raise ImageFormatError(f"{path}: could not decode image ({e})") from e

    logger.debug("Loaded %s (%dx%d)", path, pixels.shape[1], pixels.shape[0])
    return RasterImage(pixels)


def save_png(path: str | Path, pixels: np.ndarray) -> Path:
    """Write an (h, w, 3) RGB or (h, w, 4) RGBA uint8 array as PNG."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if pixels.ndim != 3 or pixels.shape[2] not in (3, 4):
        raise ValueError(f"expected an (h, w, 3|4) array, got shape {pixels.shape}")
    Image.fromarray(np.ascontiguousarray(pixels, dtype=np.uint8)).save(
        path, format="PNG", optimize=False, compress_level=PNG_COMPRESS_LEVEL
    )
    return path
