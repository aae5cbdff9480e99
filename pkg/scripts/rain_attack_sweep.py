"""Artificial-rain attack: secrecy rate and favourability across rain rates.

Runs ``scenarios/ar_ad_rain_sweep.yaml`` with a finer rate grid and prints
the columns that matter for the attack.
"""

import argparse
from pathlib import Path

from secrecysim.config import load_scenario
from secrecysim.runner import run_scenario

SCENARIO = Path(__file__).resolve().parent.parent / "scenarios" / "ar_ad_rain_sweep.yaml"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scenario", type=Path, default=SCENARIO)
    ap.add_argument("--max-rate", type=float, default=50.0)
    ap.add_argument("--step", type=float, default=2.5)
    ap.add_argument("--eve", action="store_true", help="also attenuate the eavesdropper link")
    args = ap.parse_args()

    cfg = load_scenario(args.scenario)
    cfg.weather.applies_to_eve = args.eve
    n = int(round(args.max_rate / args.step))
    cfg.sweep.values = [i * args.step for i in range(n + 1)]
    table = run_scenario(cfg)
    cols = ["weather.rate_mm_h", "weather_db", "rx_power_main_dbm", "secrecy_rate", "favorable"]
    print(",".join(cols))
    for row in zip(*(table.column(c) for c in cols)):
        print(",".join(str(int(v)) if isinstance(v, bool) else f"{v:.6g}" for v in row))


if __name__ == "__main__":
    main()
