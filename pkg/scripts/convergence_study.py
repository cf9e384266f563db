#!/usr/bin/env python3
"""Grid convergence of the finite-difference levels against -gamma^2/(2N^2).

Prints one row per (L, n): error and the ratio to the previous grid.
A second-order scheme halves h and shows a ratio near 4.
"""
import argparse

from hartmann_susy.numeric import RadialGrid, discretize, lowest_eigenvalues
from hartmann_susy.susy import energy_internal


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--gamma", type=float, default=1.0)
    ap.add_argument("--L", type=float, nargs="+", default=[0.0, 0.5, 1.0, 2.236068])
    ap.add_argument("--n", type=int, nargs="+", default=[1000, 2000, 4000, 8000])
    ap.add_argument("--extent", type=float, default=30.0, help="r_max = extent * N / gamma")
    args = ap.parse_args()

    print(f"{'L':>9} {'n':>6} {'h':>10} {'E_fd':>18} {'error':>10} {'ratio':>6}")
    for L in args.L:
        N = L + 1.0
        exact = energy_internal(N, args.gamma)
        prev = None
        for n in args.n:
            grid = RadialGrid(args.extent * N / args.gamma, n)
            (e,) = lowest_eigenvalues(discretize(L, args.gamma, grid), 1)
            err = abs(e - exact)
            ratio = f"{prev / err:6.2f}" if prev else ""
            print(f"{L:9.6f} {n:6d} {grid.h:10.3e} {e:18.12f} {err:10.3e} {ratio:>6}")
            prev = err


if __name__ == "__main__":
    main()
