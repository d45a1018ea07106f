"""Per-pixel information potential: local Shannon entropy of the gray levels
inside a square window around each pixel."""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass

import numpy as np

from entropytrack.errors import InvalidWindow, WindowTooLarge
from entropytrack.perception.images import GrayImage

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = 3

# Upper bound on the (rows, cols, w*w) sample stack built per band of rows.
_BAND_BYTES = 32 * 1024 * 1024


def max_bits_for(window: int) -> float:
    """Largest entropy a window can reach: every sample a distinct level."""
    return math.log2(min(256, window * window))


@dataclass(frozen=True)
class EntropyMap:
    """Raw entropy in bits, shape (height, width), for an odd window >= 3."""
    bits: np.ndarray
    window: int = DEFAULT_WINDOW

    @property
    def width(self) -> int:
        return int(self.bits.shape[1])

    @property
    def height(self) -> int:
        return int(self.bits.shape[0])

    @property
    def max_bits(self) -> float:
        return max_bits_for(self.window)


def check_window(window: int, width: int, height: int) -> None:
    if window < 3 or window % 2 == 0:
        raise InvalidWindow(f"window must be odd and >= 3, got {window}")
    limit = 2 * min(width, height) - 1
    if window > limit:
        raise WindowTooLarge(f"window {window} is too large for a {width}x{height} image (max {limit})")


def _plogp_table(n: int) -> np.ndarray:
    """c * log2(c) for c = 0..n (0 log 0 = 0)."""
    c = np.arange(n + 1, dtype=np.float64)
    out = np.zeros(n + 1, dtype=np.float64)
    out[1:] = c[1:] * np.log2(c[1:])
    return out


def _entropy_band(padded: np.ndarray, row0: int, rows: int, width: int, window: int, plogp: np.ndarray) -> np.ndarray:
    n = window * window
    samples = np.empty((rows, width, n), dtype=np.uint8)
    k = 0
    for dy in range(window):
        for dx in range(window):
            samples[:, :, k] = padded[row0 + dy : row0 + dy + rows, dx : dx + width]
            k += 1
    samples.sort(axis=-1)

    # After sorting, equal levels form runs; a run of length c adds c*log2(c).
    run = np.ones((rows, width), dtype=np.intp)
    acc = np.zeros((rows, width), dtype=np.float64)
    for k in range(1, n):
        same = samples[:, :, k] == samples[:, :, k - 1]
        acc += np.where(same, 0.0, plogp[run])
        run = np.where(same, run + 1, 1)
    acc += plogp[run]

    bits = math.log2(n) - acc / n
    # Single-level windows are exactly zero, not -1e-16.
    bits[run == n] = 0.0
    np.maximum(bits, 0.0, out=bits)
    return bits


def local_entropy(gray: GrayImage, window: int = DEFAULT_WINDOW, epsilon: float = 0.0) -> EntropyMap:
    """Entropy (bits) of the gray-level histogram of the w x w neighbourhood of
    every pixel. Out-of-bounds neighbours replicate the nearest edge pixel, so
    the map has the image's shape. Values below ``epsilon`` are set to 0."""
    check_window(window, gray.width, gray.height)
    started = time.perf_counter()

    levels = gray.levels
    height, width = levels.shape
    r = window // 2
    padded = np.pad(levels, r, mode="edge")
    plogp = _plogp_table(window * window)

    band_rows = max(1, _BAND_BYTES // (width * window * window))
    bits = np.empty((height, width), dtype=np.float64)
    for row0 in range(0, height, band_rows):
        rows = min(band_rows, height - row0)
        bits[row0 : row0 + rows] = _entropy_band(padded, row0, rows, width, window, plogp)

    if epsilon > 0:
        bits[bits < epsilon] = 0.0

    logger.info(
        "Local entropy %dx%d window=%d in %.0f ms",
        width, height, window, (time.perf_counter() - started) * 1000.0,
    )
    return EntropyMap(bits=bits, window=window)


def local_entropy_naive(gray: GrayImage, window: int = DEFAULT_WINDOW) -> EntropyMap:
    """Per-pixel histogram recomputation. Slow; the reference local_entropy is checked against."""
    check_window(window, gray.width, gray.height)
    levels = gray.levels
    height, width = levels.shape
    r = window // 2
    n = window * window
    bits = np.zeros((height, width), dtype=np.float64)
    for i in range(height):
        rows = np.clip(np.arange(i - r, i + r + 1), 0, height - 1)
        for j in range(width):
            cols = np.clip(np.arange(j - r, j + r + 1), 0, width - 1)
            counts = np.bincount(levels[np.ix_(rows, cols)].ravel(), minlength=256)
            p = counts[counts > 0] / n
            bits[i, j] = float(-np.sum(p * np.log2(p)))
    return EntropyMap(bits=np.maximum(bits, 0.0), window=window)


def normalize_255(em: EntropyMap) -> np.ndarray:
    """floor(255 * bits / max_bits) as uint8; 255 only at the theoretical maximum."""
    scaled = np.floor(255.0 * em.bits / em.max_bits)
    return np.clip(scaled, 0, 255).astype(np.uint8)


def normalize_unit(em: EntropyMap) -> np.ndarray:
    """bits / max_bits, in [0, 1]."""
    return np.clip(em.bits / em.max_bits, 0.0, 1.0)
