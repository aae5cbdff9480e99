"""Secrecy outage probability: Monte Carlo against quadrature.

Main-link SINR is Rayleigh with mean ``--main``; the eavesdropper SINR is
either constant (``--eve-const``) or Rayleigh with mean ``--eve``.
"""

import argparse
import math

from secrecysim.secrecy import SopInputs, secrecy_outage_probability, sop_quadrature
from secrecysim.simkit import FadingDescriptor
from secrecysim.units import RandomStream


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--main", type=float, default=10.0)
    ap.add_argument("--eve", type=float, default=2.0)
    ap.add_argument("--eve-const", action="store_true")
    ap.add_argument("--trials", type=int, default=1_000_000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--rates", type=float, nargs="+", default=[0.25, 0.5, 1.0, 2.0, 3.0])
    args = ap.parse_args()

    main_law = FadingDescriptor.rayleigh(args.main)
    eve_law = (FadingDescriptor.deterministic(math.sqrt(args.eve)) if args.eve_const
               else FadingDescriptor.rayleigh(args.eve))
    print("target_rate,sop_mc,sop_mc_stderr,sop_quadrature,z")
    for i, cr in enumerate(args.rates):
        inp = SopInputs(cr, main_law, eve_law)
        est = secrecy_outage_probability(inp, RandomStream(args.seed, i), args.trials)
        q = sop_quadrature(inp)
        z = (est.mean - q) / est.stderr if est.stderr > 0 else 0.0
        print(f"{cr!r},{est.mean!r},{est.stderr!r},{q!r},{z:.3f}")


if __name__ == "__main__":
    main()
