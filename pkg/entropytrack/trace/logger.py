from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterator


@dataclass
class TraceLogger:
    """Appends one JSON object per pipeline stage to ``<out_dir>/trace.jsonl``."""
    out_dir: Path
    filename: str = "trace.jsonl"
    _fp: Any = field(default=None, init=False, repr=False)

    def __post_init__(self) -> None:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self._fp = open(self.out_dir / self.filename, "a", encoding="utf-8")

    def __enter__(self) -> "TraceLogger":
        return self

    def __exit__(self, *exc: Any) -> None:
        self.close()

    def close(self) -> None:
        try:
            self._fp.close()
        except Exception:
            pass

    def log(self, op: str, **fields: Any) -> None:
        evt = {"t": time.time(), "op": op, **fields}
        self._fp.write(json.dumps(evt, default=str) + "\n")
        self._fp.flush()

    @contextmanager
    def stage(self, op: str, **fields: Any) -> Iterator[dict[str, Any]]:
        """Time a stage; the yielded dict collects result fields for the record."""
        result: dict[str, Any] = {}
        started = time.perf_counter()
        yield result
        self.log(op, elapsed_ms=round((time.perf_counter() - started) * 1000.0, 3), **fields, **result)
