"""Event CSV ingestion: ``timestamp_ms,x,y[,source]`` per line, no header by default."""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, TextIO

from entropytrack.errors import MissingInput, OrderError, ParseError

logger = logging.getLogger(__name__)


class Source(str, Enum):
    MOUSE = "mouse"
    GAZE = "gaze"


@dataclass(frozen=True)
class TrackingEvent:
    """One sample. Coordinates are page pixels and may fall outside the page."""
    timestamp: int
    x: int
    y: int
    source: Source = Source.MOUSE


# Values are stored in int64 arrays downstream.
_INT64_MIN, _INT64_MAX = -(2**63), 2**63 - 1


def _in_range(value: int, text: str, field: str, line: int) -> int:
    if not _INT64_MIN <= value <= _INT64_MAX:
        raise ParseError(line, f"{field} is out of range: {text!r}")
    return value


def _parse_int(text: str, field: str, line: int) -> int:
    try:
        value = int(text)
    except ValueError:
        raise ParseError(line, f"{field} is not an integer: {text!r}") from None
    return _in_range(value, text, field, line)


def _parse_coord(text: str, field: str, line: int) -> int:
    # Gaze exports commonly carry sub-pixel coordinates; floor to the pixel.
    try:
        return _in_range(int(text), text, field, line)
    except ValueError:
        pass
    try:
        value = float(text)
    except ValueError:
        raise ParseError(line, f"{field} is not a number: {text!r}") from None
    if not math.isfinite(value):
        raise ParseError(line, f"{field} is not finite: {text!r}")
    return _in_range(math.floor(value), text, field, line)


def _parse_row(row: list[str], line: int) -> TrackingEvent:
    fields = [f.strip() for f in row]
    if len(fields) not in (3, 4):
        raise ParseError(line, f"expected 3 or 4 fields, got {len(fields)}")

    timestamp = _parse_int(fields[0], "timestamp", line)
    if timestamp < 0:
        raise ParseError(line, f"timestamp must be non-negative, got {timestamp}")
    x = _parse_coord(fields[1], "x", line)
    y = _parse_coord(fields[2], "y", line)

    source = Source.MOUSE
    if len(fields) == 4 and fields[3]:
        try:
            source = Source(fields[3].lower())
        except ValueError:
            raise ParseError(line, f"unknown source {fields[3]!r} (expected mouse or gaze)") from None
    return TrackingEvent(timestamp=timestamp, x=x, y=y, source=source)


def iter_events(stream: Iterable[str], has_header: bool = False) -> Iterator[TrackingEvent]:
    """Stream events in file order, validating that timestamps never decrease."""
    previous: int | None = None
    for line_no, row in enumerate(csv.reader(stream), start=1):
        if has_header and line_no == 1:
            continue
        if not row or all(not f.strip() for f in row):
            continue
        event = _parse_row(row, line_no)
        if previous is not None and event.timestamp < previous:
            raise OrderError(line_no, previous, event.timestamp)
        previous = event.timestamp
        yield event


def parse_events(stream: str | TextIO, has_header: bool = False) -> list[TrackingEvent]:
    if isinstance(stream, str):
        stream = stream.splitlines()
    return list(iter_events(stream, has_header=has_header))


def read_events(path: str | Path, has_header: bool = False) -> list[TrackingEvent]:
    path = Path(path)
    if not path.exists():
        raise MissingInput(f"event log not found: {path}")
    # newline="" lets csv handle LF and CRLF alike.
    with open(path, "r", encoding="utf-8", newline="") as fp:
        try:
            events = parse_events(fp, has_header=has_header)
        except ParseError as e:
            e.args = (f"{path}: {e}",)
            raise
    logger.info("Read %d events from %s", len(events), path)
    return events


def format_events(events: Iterable[TrackingEvent]) -> str:
    return "".join(f"{e.timestamp},{e.x},{e.y},{e.source.value}\n" for e in events)


def write_events(path: str | Path, events: Iterable[TrackingEvent]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_events(events), encoding="utf-8")
    return path
