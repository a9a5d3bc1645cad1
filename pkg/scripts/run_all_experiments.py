"""Run every experiment at its default configuration and write CSV reports.

Usage: python scripts/run_all_experiments.py [OUTDIR]   (default: reports/)
Exit status is nonzero if any experiment reports a failed assertion.
"""

import sys
import time
from pathlib import Path

from dyadic_summability.cli import main

COMMANDS = ["kernels", "converge", "diverge", "lemma2", "diagnostics"]


def run_all(outdir: Path) -> int:
    outdir.mkdir(parents=True, exist_ok=True)
    worst = 0
    for cmd in COMMANDS:
        t0 = time.perf_counter()
        code = main([cmd, "--out", str(outdir / f"{cmd}.csv")])
        print(f"{cmd:12s} exit={code} {time.perf_counter() - t0:6.2f}s")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(run_all(Path(sys.argv[1] if len(sys.argv) > 1 else "reports")))
