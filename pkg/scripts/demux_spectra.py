"""Complementary demultiplexer spectra at ports 5 and 6 and the pump pulse response."""
import argparse

import numpy as np

from tbsim.circuit import pulse_response, spectral_sweep
from tbsim.detection import calibrated_reference_chip


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--start", type=float, default=1540.0)
    ap.add_argument("--stop", type=float, default=1570.0)
    ap.add_argument("--steps", type=int, default=601)
    args = ap.parse_args()

    net = calibrated_reference_chip()
    grid = np.linspace(args.start, args.stop, args.steps)
    spec = spectral_sweep(net, "7", grid, ["5", "6"])
    total = 10 * np.log10(10 ** (spec["5"] / 10) + 10 ** (spec["6"] / 10))
    print(f"{'lambda_nm':>10} {'port5_db':>9} {'port6_db':>9}")
    for lam in (1550.9, 1555.7, 1560.5):
        k = int(np.argmin(np.abs(grid - lam)))
        print(f"{grid[k]:10.2f} {spec['5'][k]:9.2f} {spec['6'][k]:9.2f}")
    print(f"summed transmission ripple: {np.ptp(total):.3f} dB (complementary ports)")
    for port, b, off, p in pulse_response(net, "2", 1555.7):
        print(f"pulse -> port {port} bin {b}: t = {off:6.1f} ps, power {p:.4f}")


if __name__ == "__main__":
    main()
