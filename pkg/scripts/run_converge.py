#!/usr/bin/env python3
"""Strong-convergence demo: finite-N L^p norms against their free limits.

Runs the `converge` sweep for a small basket of polynomials and writes one
CSV per polynomial.  The `gap` column should shrink as N grows, while every
finite value stays below its `rd_bound` column.
"""

import argparse
import pathlib
import sys

from qhaar import cli

POLYS = {
    "single": "x[1,1]",
    "square": "x[1,1]^2",
    "sum": "x[1,1]+x[1,2]",
    "offdiag_product": "x[1,1]*x[2,2]",
}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="converge_out")
    ap.add_argument("--N-list", default="4,8,16,32")
    ap.add_argument("--p-list", default="2,4")
    ap.add_argument("--kmax", type=int, default=12)
    args = ap.parse_args()

    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, poly in POLYS.items():
        path = out_dir / f"{name}.csv"
        code = cli.main(["converge", "--poly", poly, "--N-list", args.N_list,
                         "--p-list", args.p_list, "--kmax", str(args.kmax),
                         "--out", str(path)])
        if code != 0:
            return code
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
