#!/usr/bin/env python3
"""Tabulate the eigenspace trace against the pulled-back canonical trace.

For each smooth t the table shows T_v(t), T_can(t^N) under the adjudicated
orientation, and their ratio; the footer reports the constant, its squared
modulus, and the weight target q^(N-n-1) squared.
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from dworkbench.harness import katz_check


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--N", type=int, default=7)
    ap.add_argument("--q", type=int, default=29)
    ap.add_argument("--json", metavar="OUT", help="also dump the full report")
    args = ap.parse_args()

    rep = katz_check(args.n, args.N, args.q)
    for row in rep.rows:
        if "skip" in row:
            print(f"t={row['t']:4d}  skipped: {row['skip']}")
        else:
            print(f"t={row['t']:4d}  ratio={row['ratio']}")
    print()
    print(f"orientation     : {rep.orientation}"
          + ("  (both orientations constant)" if rep.both_constant else ""))
    print(f"constant        : {rep.constant}")
    print(f"lambda          : {rep.lam}")
    if rep.lam is not None:
        target = float(args.q) ** (args.N - args.n - 1)
        print(f"|lambda|^2      : {rep.lam.abs2():.6f}  (target {target:.0f})")
    print(f"image points    : {rep.image_points}")
    print(f"perturbed check : {rep.control_constant}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rep.to_result().to_json(), fh, indent=1, sort_keys=True)
        print(f"report written  : {args.json}")
    return 0 if rep.to_result().ok else 1


if __name__ == "__main__":
    sys.exit(main())
