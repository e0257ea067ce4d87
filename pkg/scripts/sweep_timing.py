"""Time every check on every shape up to nmax and print the slowest runs.

    python3 scripts/sweep_timing.py 5
"""

import sys
import time

from sparserees.checks import run_all
from sparserees.sparse import valid_shapes


def main():
    nmax = int(sys.argv[1]) if len(sys.argv) > 1 else 5
    rows = []
    t0 = time.perf_counter()
    for sh in valid_shapes(nmax):
        for rep in run_all(sh):
            rows.append((rep.millis or 0.0, str(sh), rep.name, rep.status))
    total = time.perf_counter() - t0
    for ms, sh, name, status in sorted(rows, reverse=True)[:15]:
        print(f"{ms:10.1f} ms  {sh:10} {name:22} {status}")
    print(f"{len(rows)} reports in {total:.1f}s")


if __name__ == "__main__":
    main()
