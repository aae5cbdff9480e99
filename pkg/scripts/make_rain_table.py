"""Regenerate the shipped rain coefficient table from the Gaussian-sum fits.

    python3 scripts/make_rain_table.py [--out PATH] [--step GHZ]
"""

import argparse
from pathlib import Path

import numpy as np

from secrecysim.weather import RainCoefficientTable

DEFAULT_OUT = Path(__file__).resolve().parent.parent / "src" / "secrecysim" / "data" / "rain_coefficients.csv"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=DEFAULT_OUT)
    ap.add_argument("--fmin", type=float, default=1.0)
    ap.add_argument("--fmax", type=float, default=100.0)
    ap.add_argument("--step", type=float, default=1.0)
    args = ap.parse_args()
    freqs = np.arange(args.fmin, args.fmax + args.step / 2, args.step)
    RainCoefficientTable.from_curve_fits(freqs).to_csv(args.out)
    print(f"wrote {len(freqs)} rows to {args.out}")


if __name__ == "__main__":
    main()
