"""Simulated signal-heater fringes at idler heater 0 V and 4 V, with fit and singles check."""
import argparse
import time

import numpy as np

from tbsim.analysis import classical_limit_test, fit_fringe, singles_flatness, visibility
from tbsim.detection import DEFAULT_SEED, ExperimentConfig, fringe_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pulses", type=float, default=4e10, help="pulses per scan point")
    ap.add_argument("--points", type=int, default=21)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--noise", choices=("on", "off"), default="on")
    args = ap.parse_args()

    u = np.sqrt(np.linspace(0, 100, args.points))
    for idler in (0.0, 4.0):
        cfg = ExperimentConfig(heater_voltages={"i": idler}, n_pulses=int(args.pulses), rng_seed=args.seed)
        if args.noise == "off":
            cfg = cfg.noiseless()
        t0 = time.perf_counter()
        scan = fringe_scan(cfg, "s", u, threads=args.threads)
        fit = fit_fringe(scan)
        v, s = visibility(fit)
        cs, ci, dof = singles_flatness(scan)
        print(f"idler {idler:g} V: V = {v:.4f} +- {s:.4f} ({classical_limit_test(v, s)}), "
              f"alpha = {fit.alpha:.5f} rad/V^2, singles chi2/dof {cs / dof:.2f} / {ci / dof:.2f}, "
              f"{time.perf_counter() - t0:.1f} s")
        for x, c in zip(scan.u_squared, scan.coincidences):
            print(f"  u^2 = {x:6.1f}  C = {int(c)}")


if __name__ == "__main__":
    main()
