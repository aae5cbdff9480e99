"""Average main-link and leakage rates in an ultra-dense network versus
eavesdropper density, plus a check of the nearest-eavesdropper distance law."""

import argparse
import math

import numpy as np
from scipy import stats

from secrecysim.models import UdnField, udn_average_secrecy
from secrecysim.simkit import FadingDescriptor
from secrecysim.units import RandomStream


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bs-density", type=float, default=1e-5)
    ap.add_argument("--densities", type=float, nargs="+", default=[0.0, 1e-5, 5e-5, 1e-4, 5e-4])
    ap.add_argument("--k-factor", type=float, default=10.0)
    ap.add_argument("--trials", type=int, default=5000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    print("eve_density,rate_main,rate_main_stderr,rate_eve,rate_eve_stderr,secrecy,secrecy_stderr,ks_pvalue")
    for psi in args.densities:
        fad = FadingDescriptor.rician(args.k_factor)
        f = UdnField(args.bs_density, 1e-3, psi, main_fading=fad, eve_fading=fad, window_side=2000.0)
        est = udn_average_secrecy(f, RandomStream(args.seed), args.trials)
        p = float("nan")
        if psi > 0 and len(est.eve_distances):
            p = stats.kstest(est.eve_distances, lambda b: 1 - np.exp(-math.pi * psi * b**2)).pvalue
        print(f"{psi!r},{est.main.mean!r},{est.main.stderr!r},{est.eve.mean!r},{est.eve.stderr!r},"
              f"{est.secrecy!r},{est.secrecy_stderr!r},{p:.4f}")


if __name__ == "__main__":
    main()
