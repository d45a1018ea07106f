from __future__ import annotations

from dataclasses import replace

import pytest

from entropytrack.config import PipelineConfig
from entropytrack.errors import InvalidParameter, InvalidWindow


def test_defaults_are_valid():
    cfg = PipelineConfig()
    assert cfg.validate() is cfg
    assert (cfg.window, cfg.cell_size, cfg.idle_cap_ms) == (3, 1, 1000.0)
    assert (cfg.blur_sigma, cfg.overlay_alpha) == (8.0, 0.6)


@pytest.mark.parametrize("window", [1, 2, 4, 0, -3])
def test_bad_window(window):
    with pytest.raises(InvalidWindow, match="window must be odd"):
        replace(PipelineConfig(), window=window).validate()


@pytest.mark.parametrize(
    "change",
    [
        {"cell_size": 0},
        {"idle_cap_ms": 0.0},
        {"epsilon": -0.1},
        {"blur_sigma": -1.0},
        {"overlay_alpha": 1.01},
    ],
)
def test_bad_parameters(change):
    with pytest.raises(InvalidParameter) as exc:
        replace(PipelineConfig(), **change).validate()
    assert exc.value.exit_code == 3
