"""Regenerate the (r, a) tables for every prime and write one report per prime.

    python scripts/regenerate_tables.py --out reports --format md
"""

import argparse
import sys
import time
from pathlib import Path

from k3mirror.pipeline import verify_tables
from k3mirror.weights import PRIMES


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="reports")
    ap.add_argument("--format", choices=["md", "csv", "json"], default="md")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    failed = False
    for p in PRIMES:
        t0 = time.perf_counter()
        report = verify_tables(p, jobs=args.jobs)
        path = out / f"table_p{p}.{args.format}"
        path.write_text(report.render(args.format))
        status = "ok" if report.ok else f"{len(report.mismatches)} mismatches"
        print(f"p={p:2d}: {report.matched_rows}/{report.golden_rows} rows, {status}, "
              f"{time.perf_counter() - t0:.1f}s -> {path}")
        failed |= not report.ok
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
