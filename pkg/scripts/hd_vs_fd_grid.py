"""Tabulate half-duplex and full-duplex miss-rates over a parameter grid.

Writes one CSV row per (p_dl, p_ul, n, u) and prints how often the
half-duplex attack misses less.
"""

import argparse
import csv
import sys

import numpy as np

from secrecysim.attack import AttackParams, miss_rates


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="-")
    ap.add_argument("--step", type=float, default=0.05)
    ap.add_argument("--nmax", type=int, default=10)
    args = ap.parse_args()

    grid = np.round(np.arange(args.step, 1.0 - args.step / 2, args.step), 10)
    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["p_dl", "p_ul", "n", "u", "p_total", "miss_rate_fd", "miss_rate_hd", "in_range"])
    total = wins = 0
    for p_dl in grid:
        for p_ul in grid:
            for n in range(2, args.nmax + 1):
                for u in range(n + 1):
                    o = miss_rates(AttackParams(p_dl, p_ul, n, u))
                    w.writerow([repr(p_dl), repr(p_ul), n, u, repr(o.p_total), repr(o.miss_rate_fd),
                                repr(o.miss_rate_hd), int(o.miss_rates_in_range)])
                    total += 1
                    wins += o.miss_rate_fd >= o.miss_rate_hd
    if fh is not sys.stdout:
        fh.close()
    print(f"HD miss-rate <= FD miss-rate at {wins}/{total} grid points", file=sys.stderr)


if __name__ == "__main__":
    main()
