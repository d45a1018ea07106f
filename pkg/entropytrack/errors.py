"""Exception hierarchy. Each class carries the CLI exit code it maps to."""

from __future__ import annotations


class EntropyTrackError(Exception):
    exit_code: int = 1


# ── exit 2: unreadable / malformed input ─────────────────────────

class InputError(EntropyTrackError):
    exit_code = 2


class MissingInput(InputError):
    pass


class ImageFormatError(InputError):
    pass


class GridFormatError(InputError):
    pass


class ParseError(InputError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class OrderError(ParseError):
    def __init__(self, line: int, previous: int, current: int):
        super().__init__(line, f"timestamp {current} is earlier than previous timestamp {previous}")
        self.previous = previous
        self.current = current


# ── exit 3: bad parameters ───────────────────────────────────────

class InvalidParameter(EntropyTrackError):
    exit_code = 3


class InvalidWindow(InvalidParameter):
    pass


class WindowTooLarge(InvalidParameter):
    pass


# ── exit 4 ───────────────────────────────────────────────────────

class DimensionMismatch(EntropyTrackError):
    exit_code = 4

    def __init__(self, shape_a: tuple, shape_b: tuple, what: str = "maps"):
        super().__init__(f"{what} have different dimensions: {tuple(shape_a)} vs {tuple(shape_b)}")
        self.shape_a = tuple(shape_a)
        self.shape_b = tuple(shape_b)


# ── exit 5: data that makes a metric undefined ───────────────────

class DegenerateData(EntropyTrackError):
    exit_code = 5


class ZeroVariance(DegenerateData):
    pass


class ZeroMass(DegenerateData):
    pass
