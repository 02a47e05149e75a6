"""Print the (m, a) points of the classification for one prime and their mirrors.

The mirror of (r, a) is (20 - r, a); in terms of m = (22 - r)/(p - 1) this is
the reflection m -> mu - m with mu = 24/(p - 1).  Points realised by some
(W, G) pair of the tables are marked with '*'.
"""

import argparse

from k3mirror.lattices import EXCLUDED, classification_rows
from k3mirror.pipeline import verify_tables


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--prime", type=int, default=3, choices=[3, 5, 7])
    args = ap.parse_args()
    p = args.prime
    mu = 24 // (p - 1)
    realised = {(rec.r, rec.a) for rec in verify_tables(p).records}
    rows = classification_rows(p)
    pts = {((22 - row.r) // (p - 1), row.a): row for row in rows}
    max_m = max(m for m, _ in pts)
    max_a = max(a for _, a in pts)
    print(f"p={p}, mu={mu}; columns m=0..{max_m}, rows a={max_a}..0")
    for a in range(max_a, -1, -1):
        line = ""
        for m in range(max_m + 1):
            row = pts.get((m, a))
            if row is None:
                line += "  ."
            elif (p, row.r, row.a) in EXCLUDED:
                line += "  x"
            else:
                line += "  *" if (row.r, row.a) in realised else "  o"
        print(f"a={a:2d} {line}")
    print("\n(r,a) -> mirror (20-r,a):")
    for row in rows:
        tag = "excluded" if (p, row.r, row.a) in EXCLUDED else f"({20 - row.r},{row.a})"
        print(f"  ({row.r},{row.a}) m={(22 - row.r) // (p - 1)} -> {tag}")


if __name__ == "__main__":
    main()
