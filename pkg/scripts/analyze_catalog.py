#!/usr/bin/env python3
"""Analyze every file in the shipped example catalog.

Graph files go through the graph-of-groups pipeline, presentation files
through the torsion-relator pipeline with the oracle enabled.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from l2trees.cli import main  # noqa: E402

DATA = Path(__file__).resolve().parent.parent / "src" / "l2trees" / "data"

if __name__ == "__main__":
    worst = 0
    for path in sorted(DATA.iterdir()):
        print(f"=== {path.name} ===")
        if path.suffix == ".json":
            worst = max(worst, main(["analyze-gog", str(path)]))
        else:
            worst = max(worst, main(["analyze-presentation", str(path), "--enumerate",
                                     "--limit", "5000"]))
        print()
    sys.exit(worst)
