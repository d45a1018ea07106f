#!/usr/bin/env python3
"""Write a synthetic reading session (page.png, gaze.csv, mouse.csv).

Usage:
    python scripts/make_synthetic_session.py --seed 7 --out data/synthetic
    python scripts/run_cli.py pipeline data/synthetic/page.png data/synthetic/mouse.csv \
        --gaze data/synthetic/gaze.csv --out results/synthetic
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO_ROOT))

from entropytrack.synthetic import make_session, write_session


def main() -> None:
    parser = argparse.ArgumentParser(description="Generate a synthetic page with gaze and mouse traces")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--duration-ms", type=int, default=60_000)
    parser.add_argument("--park-fraction", type=float, default=0.3, help="Share of mouse time parked in the blank margin")
    parser.add_argument("--out", type=Path, required=True, help="Output directory")
    args = parser.parse_args()

    session = make_session(args.seed, duration_ms=args.duration_ms, park_fraction=args.park_fraction)
    paths = write_session(session, args.out)
    for name, path in paths.items():
        print(f"{name}: {path}", file=sys.stderr)
    print(f"{session.total_ms} ms session, {session.parked_ms} ms parked", file=sys.stderr)


if __name__ == "__main__":
    main()
