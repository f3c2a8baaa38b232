#!/usr/bin/env python3
"""Run the built-in triangle-group census with the enumeration oracle.

Prints one classified row per (p, q, r) with 2 <= p <= q <= r <= 6 plus
(2, 3, 7); spherical rows get their exact group order from the oracle.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from l2trees.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main(["census", "--builtin", "--enumerate", "--limit", "5000"]))
