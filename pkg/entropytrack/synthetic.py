"""Synthetic reading sessions: a text-like page with a blank margin, a gaze
trace that only visits text, and a mouse trace equal to the gaze trace except
that a share of its time is parked in the blank margin."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from entropytrack.perception.images import RasterImage, save_png
from entropytrack.tracking.events import Source, TrackingEvent, write_events

logger = logging.getLogger(__name__)

PAGE_WIDTH = 800
PAGE_HEIGHT = 600

# Text column; everything right of MARGIN_LEFT stays blank.
TEXT_LEFT, TEXT_RIGHT = 40, 540
TEXT_TOP, TEXT_BOTTOM = 40, 560
LINE_HEIGHT, LINE_GAP = 12, 6
MARGIN_LEFT = 600


@dataclass(frozen=True)
class TextLine:
    left: int
    right: int  # exclusive
    top: int
    bottom: int  # exclusive


@dataclass(frozen=True)
class SyntheticSession:
    page: RasterImage
    lines: tuple[TextLine, ...]
    gaze: tuple[TrackingEvent, ...]
    mouse: tuple[TrackingEvent, ...]
    parked_ms: int
    total_ms: int


def _make_page(rng: np.random.Generator) -> tuple[np.ndarray, list[TextLine]]:
    gray = np.full((PAGE_HEIGHT, PAGE_WIDTH), 255, dtype=np.uint8)
    lines: list[TextLine] = []
    top = TEXT_TOP
    while top + LINE_HEIGHT <= TEXT_BOTTOM:
        # Ragged right edge, and the odd paragraph break.
        right = int(rng.integers(TEXT_RIGHT - 120, TEXT_RIGHT + 1))
        if rng.random() < 0.12:
            top += LINE_HEIGHT + LINE_GAP
            continue
        band = gray[top : top + LINE_HEIGHT, TEXT_LEFT:right]
        ink = rng.random(band.shape) < 0.5
        band[ink] = rng.integers(0, 200, size=int(ink.sum()), dtype=np.uint8)
        lines.append(TextLine(TEXT_LEFT, right, top, top + LINE_HEIGHT))
        top += LINE_HEIGHT + LINE_GAP
    return np.repeat(gray[:, :, None], 3, axis=2), lines


def make_session(
    seed: int,
    duration_ms: int = 60_000,
    park_fraction: float = 0.3,
    park_spots: int = 3,
) -> SyntheticSession:
    rng = np.random.default_rng(seed)
    pixels, lines = _make_page(rng)

    # Fixations land at least 2 px inside a text line.
    fixations: list[tuple[int, int, int]] = []
    elapsed = 0
    while elapsed < duration_ms:
        line = lines[int(rng.integers(len(lines)))]
        x = int(rng.integers(line.left + 2, line.right - 2))
        y = int(rng.integers(line.top + 2, line.bottom - 2))
        dur = int(rng.integers(150, 451))
        fixations.append((x, y, dur))
        elapsed += dur

    spots = [
        (int(rng.integers(MARGIN_LEFT + 20, PAGE_WIDTH - 20)), int(rng.integers(20, PAGE_HEIGHT - 20)))
        for _ in range(park_spots)
    ]
    parked: dict[int, tuple[int, int]] = {}
    parked_ms = 0
    for idx in rng.permutation(len(fixations)):
        if parked_ms >= park_fraction * elapsed:
            break
        parked[int(idx)] = spots[int(rng.integers(len(spots)))]
        parked_ms += fixations[int(idx)][2]

    gaze: list[TrackingEvent] = []
    mouse: list[TrackingEvent] = []
    t = 0
    for k, (x, y, dur) in enumerate(fixations):
        gaze.append(TrackingEvent(t, x, y, Source.GAZE))
        mx, my = parked.get(k, (x, y))
        mouse.append(TrackingEvent(t, mx, my, Source.MOUSE))
        t += dur
    # Closing samples end the last interval.
    gaze.append(TrackingEvent(t, gaze[-1].x, gaze[-1].y, Source.GAZE))
    mouse.append(TrackingEvent(t, mouse[-1].x, mouse[-1].y, Source.MOUSE))

    logger.debug(
        "Synthetic session seed=%d: %d fixations, %d ms, %d ms parked", seed, len(fixations), t, parked_ms,
    )
    return SyntheticSession(
        page=RasterImage(pixels),
        lines=tuple(lines),
        gaze=tuple(gaze),
        mouse=tuple(mouse),
        parked_ms=parked_ms,
        total_ms=t,
    )


def write_session(session: SyntheticSession, out_dir: str | Path) -> dict[str, Path]:
    out_dir = Path(out_dir)
    return {
        "page": save_png(out_dir / "page.png", session.page.pixels),
        "gaze": write_events(out_dir / "gaze.csv", session.gaze),
        "mouse": write_events(out_dir / "mouse.csv", session.mouse),
    }
