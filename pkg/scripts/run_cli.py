#!/usr/bin/env python3
"""Entry point for the entropytrack command line.

Usage:
    python scripts/run_cli.py pipeline page.png mouse.csv --gaze gaze.csv --out results/run1
    python scripts/run_cli.py --help
"""

from __future__ import annotations

import sys
from pathlib import Path

# Ensure repo root is on sys.path
REPO_ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO_ROOT))

from entropytrack.cli import main

if __name__ == "__main__":
    sys.exit(main())
