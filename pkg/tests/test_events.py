from __future__ import annotations

import io

import pytest

from entropytrack.errors import MissingInput, OrderError, ParseError
from entropytrack.tracking.events import Source, TrackingEvent, format_events, parse_events, read_events


def test_parse_two_events():
    events = parse_events("0,10,20,mouse\n100,12,20,mouse")
    assert events == [
        TrackingEvent(0, 10, 20, Source.MOUSE),
        TrackingEvent(100, 12, 20, Source.MOUSE),
    ]


def test_empty_input():
    assert parse_events("") == []


def test_non_numeric_field():
    with pytest.raises(ParseError) as exc:
        parse_events("100,a,20,mouse")
    assert exc.value.line == 1
    assert "line 1" in str(exc.value)


def test_error_reports_the_offending_line():
    with pytest.raises(ParseError) as exc:
        parse_events("0,1,1\n5,2,2\n7,3\n")
    assert exc.value.line == 3


def test_decreasing_timestamps():
    with pytest.raises(OrderError) as exc:
        parse_events("0,1,1\n50,1,1\n40,1,1\n")
    assert exc.value.line == 3
    assert (exc.value.previous, exc.value.current) == (50, 40)


def test_equal_timestamps_are_allowed():
    assert len(parse_events("5,1,1\n5,2,2\n")) == 2


def test_source_is_optional_and_case_insensitive():
    events = parse_events("0,1,1\n1,2,2,GAZE\n2,3,3,\n")
    assert [e.source for e in events] == [Source.MOUSE, Source.GAZE, Source.MOUSE]


def test_unknown_source():
    with pytest.raises(ParseError, match="unknown source"):
        parse_events("0,1,1,keyboard")


def test_negative_timestamp():
    with pytest.raises(ParseError, match="non-negative"):
        parse_events("-1,1,1")


def test_fractional_coordinates_floor_to_pixel():
    e = parse_events("0,10.7,-0.5,gaze")[0]
    assert (e.x, e.y) == (10, -1)


@pytest.mark.parametrize(
    "text, field",
    [
        ("0,1e20,5", "x"),
        ("0,5,-1e20", "y"),
        ("0,99999999999999999999,5", "x"),
        ("99999999999999999999,1,1", "timestamp"),
    ],
)
def test_values_beyond_int64_rejected(text, field):
    with pytest.raises(ParseError, match=f"{field} is out of range"):
        parse_events(text)


def test_far_off_page_coordinates_still_parse():
    assert parse_events("0,-5000000000,1e15")[0] == TrackingEvent(0, -5_000_000_000, 10**15)


def test_nan_coordinate_rejected():
    with pytest.raises(ParseError, match="not finite"):
        parse_events("0,nan,3")


def test_header_and_crlf():
    text = "timestamp_ms,x,y,source\r\n0,1,2,mouse\r\n10,3,4,gaze\r\n"
    events = parse_events(text, has_header=True)
    assert [(e.timestamp, e.x, e.y) for e in events] == [(0, 1, 2), (10, 3, 4)]


def test_header_without_flag_is_an_error():
    with pytest.raises(ParseError) as exc:
        parse_events("timestamp_ms,x,y,source\n0,1,2,mouse\n")
    assert exc.value.line == 1


def test_blank_lines_are_skipped_but_counted():
    with pytest.raises(ParseError) as exc:
        parse_events("0,1,1\n\n5,x,1\n")
    assert exc.value.line == 3


def test_parse_accepts_text_streams():
    assert len(parse_events(io.StringIO("0,1,1\n1,1,1\n"))) == 2


def test_read_events_from_file(tmp_path):
    events = [TrackingEvent(0, 1, 2, Source.GAZE), TrackingEvent(40, 3, 4, Source.MOUSE)]
    path = tmp_path / "s.csv"
    path.write_text(format_events(events), encoding="utf-8")
    assert read_events(path) == events


def test_read_events_names_the_file(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("0,1,1\nzz,1,1\n", encoding="utf-8")
    with pytest.raises(ParseError, match="bad.csv: line 2"):
        read_events(path)


def test_read_events_missing(tmp_path):
    with pytest.raises(MissingInput):
        read_events(tmp_path / "none.csv")
