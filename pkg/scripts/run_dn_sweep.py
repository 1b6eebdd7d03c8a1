#!/usr/bin/env python3
"""Rapid-decay constant sweep: scanned D_N estimates with rigorous uppers.

The scanned maximum should sit strictly between 1 and the rigorous upper
bound for every N, and both should decrease toward 1 as N grows.
"""

import argparse
import sys

from qhaar import cli


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--N-list", default="3,4,5,7,10,15,20,30,50")
    ap.add_argument("--rmax", type=int, default=64)
    ap.add_argument("--nkmax", type=int, default=32)
    ap.add_argument("--out", default=None)
    ap.add_argument("--format", choices=["csv", "json"], default="csv")
    args = ap.parse_args()

    argv = ["dn", "--N-list", args.N_list, "--rmax", str(args.rmax),
            "--nkmax", str(args.nkmax), "--format", args.format]
    if args.out:
        argv += ["--out", args.out]
    return cli.main(argv)


if __name__ == "__main__":
    sys.exit(main())
