from __future__ import annotations

import json

from entropytrack.trace.logger import TraceLogger


def test_stage_records_result_fields(tmp_path):
    with TraceLogger(tmp_path / "run") as trace:
        trace.log("start", window=3)
        with trace.stage("entropy", window=3) as rec:
            rec["zero_fraction"] = 0.25
    records = [json.loads(line) for line in (tmp_path / "run" / "trace.jsonl").read_text().splitlines()]
    assert [r["op"] for r in records] == ["start", "entropy"]
    assert records[1]["zero_fraction"] == 0.25
    assert records[1]["window"] == 3
    assert records[1]["elapsed_ms"] >= 0


def test_appends_across_runs(tmp_path):
    for _ in range(2):
        with TraceLogger(tmp_path) as trace:
            trace.log("run")
    assert len((tmp_path / "trace.jsonl").read_text().splitlines()) == 2
