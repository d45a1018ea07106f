from __future__ import annotations

import numpy as np
import pytest

from entropytrack.errors import DimensionMismatch, InvalidParameter
from entropytrack.tracking.dwell import build_dwell_map, grid_shape, merge_dwell_maps
from entropytrack.tracking.events import Source, TrackingEvent


def ev(t, x, y, source=Source.MOUSE):
    return TrackingEvent(t, x, y, source)


def _random_session(rng, n=300, width=50, height=40):
    ts = np.cumsum(rng.integers(0, 1500, size=n))
    xs = rng.integers(-5, width + 5, size=n)
    ys = rng.integers(-5, height + 5, size=n)
    return [ev(int(t), int(x), int(y)) for t, x, y in zip(ts, xs, ys)]


def test_no_events_gives_zero_map():
    m = build_dwell_map([], 10, 10)
    assert m.dwell.shape == (10, 10)
    assert np.all(m.dwell == 0)
    assert m.empty_session


def test_interval_goes_to_earlier_sample():
    m = build_dwell_map([ev(0, 5, 5), ev(100, 5, 5), ev(250, 7, 7)], 10, 10, cell_size=1, idle_cap=1000)
    assert m.dwell[5, 5] == 250
    assert m.dwell[7, 7] == 0
    assert m.total() == 250
    assert not m.empty_session


def test_idle_cap():
    m = build_dwell_map([ev(0, 1, 1), ev(5000, 1, 1)], 10, 10, idle_cap=1000)
    assert m.dwell[1, 1] == 1000


def test_out_of_bounds_samples_credit_nothing():
    events = [ev(0, -1, 3), ev(100, 3, 3), ev(300, 10, 3), ev(400, 2, 2)]
    m = build_dwell_map(events, 10, 10)
    assert m.dwell[3, 3] == 200
    assert m.total() == 200


def test_all_out_of_bounds_is_an_empty_session():
    m = build_dwell_map([ev(0, 50, 50), ev(100, 60, 60)], 10, 10)
    assert m.empty_session
    assert m.total() == 0


def test_shape_rounds_up():
    m = build_dwell_map([ev(0, 9, 4), ev(10, 0, 0)], 10, 5, cell_size=4)
    assert m.dwell.shape == grid_shape(10, 5, 4) == (2, 3)
    assert m.dwell[1, 2] == 10


def test_source_filter():
    events = [ev(0, 1, 1, Source.GAZE), ev(10, 2, 2, Source.MOUSE), ev(30, 3, 3, Source.GAZE), ev(60, 4, 4, Source.MOUSE)]
    gaze = build_dwell_map(events, 10, 10, source=Source.GAZE)
    mouse = build_dwell_map(events, 10, 10, source=Source.MOUSE)
    assert gaze.dwell[1, 1] == 30 and gaze.total() == 30
    assert mouse.dwell[2, 2] == 50 and mouse.total() == 50


@pytest.mark.parametrize(
    "kwargs",
    [dict(width=0, height=5), dict(width=5, height=5, cell_size=0), dict(width=5, height=5, idle_cap=0)],
)
def test_bad_parameters(kwargs):
    with pytest.raises(InvalidParameter):
        build_dwell_map([], **kwargs)


def test_mass_bounded_by_session_duration(rng):
    events = _random_session(rng)
    m = build_dwell_map(events, 50, 40, idle_cap=1000)
    assert m.total() <= events[-1].timestamp - events[0].timestamp
    assert np.all(m.dwell >= 0)


@pytest.mark.parametrize("cell", [2, 3, 7])
def test_cell_aggregation_matches_block_sums(rng, cell):
    events = _random_session(rng)
    fine = build_dwell_map(events, 50, 40, cell_size=1).dwell
    coarse = build_dwell_map(events, 50, 40, cell_size=cell).dwell
    rows = np.arange(0, 40, cell)
    cols = np.arange(0, 50, cell)
    block = np.add.reduceat(np.add.reduceat(fine, rows, axis=0), cols, axis=1)
    np.testing.assert_allclose(coarse, block)


def test_appending_events_never_decreases_dwell(rng):
    events = _random_session(rng, n=100)
    before = build_dwell_map(events[:60], 50, 40).dwell
    after = build_dwell_map(events, 50, 40).dwell
    assert np.all(after >= before)


def test_single_cell_session_has_one_nonzero_entry():
    events = [ev(t, 3, 4) for t in range(0, 1000, 50)]
    m = build_dwell_map(events, 10, 10)
    assert np.count_nonzero(m.dwell) == 1
    assert m.dwell[4, 3] == 950


def test_merge_sums_sessions():
    a = build_dwell_map([ev(0, 1, 1), ev(100, 1, 1)], 5, 5)
    b = build_dwell_map([ev(0, 1, 1), ev(40, 2, 2), ev(50, 2, 2)], 5, 5)
    merged = merge_dwell_maps([a, b])
    assert merged.dwell[1, 1] == 140
    assert merged.dwell[2, 2] == 10
    assert not merged.empty_session


def test_merge_rejects_different_grids():
    a = build_dwell_map([], 5, 5)
    b = build_dwell_map([], 6, 5)
    with pytest.raises(DimensionMismatch):
        merge_dwell_maps([a, b])
