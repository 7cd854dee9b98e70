"""Enumerate every catalog group up to a given order and diff against the stored tables.

Usage: python3 demos/reproduce_tables.py [max_order] [workers]
"""

from __future__ import annotations

import sys
import time

from cayley_incidence.enumeration import reproduce_tables


def main(argv: list[str]) -> int:
    max_order = int(argv[0]) if argv else 16
    workers = int(argv[1]) if len(argv) > 1 else 1
    t0 = time.perf_counter()
    bundle = reproduce_tables(max_order=max_order, workers=workers)
    print(bundle.format_text())
    print(f"{len(bundle.reports)} groups in {time.perf_counter() - t0:.1f}s, "
          f"{len(bundle.blocking)} blocking discrepancies")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
