from __future__ import annotations

import numpy as np
import pytest

from entropytrack.analysis.correction import correct
from entropytrack.analysis.metrics import center_of_gravity, euclidean, pearson
from entropytrack.perception.entropy_map import local_entropy
from entropytrack.perception.images import to_grayscale
from entropytrack.synthetic import MARGIN_LEFT, PAGE_HEIGHT, PAGE_WIDTH, make_session, write_session
from entropytrack.tracking.dwell import build_dwell_map
from entropytrack.tracking.events import read_events


def test_session_shape():
    s = make_session(3)
    assert (s.page.width, s.page.height) == (PAGE_WIDTH, PAGE_HEIGHT)
    assert len(s.gaze) == len(s.mouse)
    assert [e.timestamp for e in s.gaze] == [e.timestamp for e in s.mouse]
    assert 0.3 * s.total_ms <= s.parked_ms <= 0.3 * s.total_ms + 450


def test_gaze_stays_on_text_and_mouse_parks_in_margin():
    s = make_session(5)
    for e in s.gaze:
        assert any(ln.left <= e.x < ln.right and ln.top <= e.y < ln.bottom for ln in s.lines)
    moved = [(g, m) for g, m in zip(s.gaze, s.mouse) if (g.x, g.y) != (m.x, m.y)]
    assert moved
    assert all(m.x >= MARGIN_LEFT for _, m in moved)
    # The margin is blank.
    assert np.all(s.page.pixels[:, MARGIN_LEFT:] == 255)


def test_same_seed_same_session():
    a, b = make_session(11, duration_ms=5_000), make_session(11, duration_ms=5_000)
    assert a.gaze == b.gaze and a.mouse == b.mouse
    np.testing.assert_array_equal(a.page.pixels, b.page.pixels)


def test_write_session(tmp_path):
    s = make_session(2, duration_ms=3_000)
    paths = write_session(s, tmp_path)
    assert set(paths) == {"page", "gaze", "mouse"}
    assert tuple(read_events(paths["mouse"])) == s.mouse


@pytest.mark.parametrize("seed", range(20))
def test_correction_moves_mouse_towards_gaze(seed):
    s = make_session(seed)
    em = local_entropy(to_grayscale(s.page))
    w, h = s.page.width, s.page.height
    gaze = build_dwell_map(s.gaze, w, h)
    mouse = build_dwell_map(s.mouse, w, h)
    corrected = correct(mouse, em)

    assert pearson(corrected.values, gaze.dwell) > pearson(mouse.dwell, gaze.dwell)
    cog_gaze = center_of_gravity(gaze.dwell)
    assert euclidean(center_of_gravity(corrected.values), cog_gaze) < euclidean(center_of_gravity(mouse.dwell), cog_gaze)
