"""Tabulate the witness thresholds sigma, tau, nu over a range of p."""

import argparse
import csv
import sys

import numpy as np

from lipinterp import operators as ops


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p-min", type=float, default=1.25)
    ap.add_argument("--p-max", type=float, default=6.0)
    ap.add_argument("--steps", type=int, default=20)
    args = ap.parse_args(argv)
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["p", "sigma", "tau", "nu_t4", "nu_t3"])
    for p in np.linspace(args.p_min, args.p_max, args.steps):
        s = ops.sigma_threshold(p).value
        t = ops.tau_threshold(p).value
        out.writerow([f"{p:.6g}", s, t, ops.nu_t4_threshold(p).value, max(s, t)])


if __name__ == "__main__":
    main()
