#!/usr/bin/env python3
"""Tabulate radial functions R(r) for every state up to an excitation cutoff.

Writes one CSV with a column per state, ready for plotting.
"""
import argparse
import csv
import sys

import numpy as np

from hartmann_susy import HartmannParams, UnitSystem, spectrum
from hartmann_susy.model import radial_wavefunction


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--eta", type=float, default=1.0)
    ap.add_argument("--sigma", type=float, default=1.0)
    ap.add_argument("--m", type=int, default=0)
    ap.add_argument("--max-excitation", type=int, default=2)
    ap.add_argument("--r-max", type=float, default=40.0)
    ap.add_argument("--samples", type=int, default=401)
    ap.add_argument("-o", "--output", default="-")
    args = ap.parse_args()

    p = HartmannParams(args.eta, args.sigma)
    units = UnitSystem()
    states = spectrum(p, units, (args.m, args.m), args.max_excitation)
    r = np.linspace(0.0, args.r_max, args.samples)
    names = [f"R(nu={s.qn.nu},n={s.qn.nprime},N={s.qn.N:.4f})" for s in states]
    cols = [radial_wavefunction(p, units, s.qn)(r) for s in states]

    out = sys.stdout if args.output == "-" else open(args.output, "w", newline="")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["r"] + names)
    for i, ri in enumerate(r):
        w.writerow([f"{ri:.17g}"] + [f"{c[i]:.17g}" for c in cols])
    if out is not sys.stdout:
        out.close()


if __name__ == "__main__":
    main()
