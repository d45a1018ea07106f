from __future__ import annotations

from dataclasses import dataclass

from entropytrack.errors import InvalidParameter, InvalidWindow


@dataclass(frozen=True)
class PipelineConfig:
    # Side of the square entropy window, in pixels. Odd, >= 3.
    window: int = 3
    # Entropy below this many bits is treated as zero (anti-aliasing noise
    # around otherwise blank regions). 0 keeps the exact formula.
    epsilon: float = 0.0

    # Dwell map resolution. 1 = one cell per pixel.
    cell_size: int = 1
    # Longest gap (ms) credited to a single sample; longer pauses are capped.
    idle_cap_ms: float = 1000.0
    # Event CSVs start with a header row to skip.
    has_header: bool = False

    # Presentation only; metrics are always computed on unblurred maps.
    blur_sigma: float = 8.0
    overlay_alpha: float = 0.6
    zero_transparent: bool = True
    mark_centers: bool = False

    def validate(self) -> "PipelineConfig":
        if self.window < 3 or self.window % 2 == 0:
            raise InvalidWindow(f"window must be odd and >= 3, got {self.window}")
        if self.cell_size < 1:
            raise InvalidParameter(f"cell size must be >= 1, got {self.cell_size}")
        if self.idle_cap_ms <= 0:
            raise InvalidParameter(f"idle cap must be > 0 ms, got {self.idle_cap_ms}")
        if self.epsilon < 0:
            raise InvalidParameter(f"epsilon must be >= 0, got {self.epsilon}")
        if self.blur_sigma < 0:
            raise InvalidParameter(f"blur sigma must be >= 0, got {self.blur_sigma}")
        if not 0.0 <= self.overlay_alpha <= 1.0:
            raise InvalidParameter(f"overlay alpha must be in [0, 1], got {self.overlay_alpha}")
        return self
