#!/usr/bin/env python3
"""Survey point counts of the cubic family over one or two small fields.

Prints, for every t, the point count of the projective fiber, whether the
fiber is smooth, and for smooth fibers the Frobenius trace recovered from
1 + q - #Y(F_q).
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from dworkbench.cyclotomic import CycloElem
from dworkbench.dwork import DworkFiber, count_points, eigentrace_charsum
from dworkbench.finitefield import build_field


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, nargs="+", default=[7, 13])
    ap.add_argument("--ext", type=int, default=1, help="also count over this extension degree")
    args = ap.parse_args()

    for q in args.q:
        field = build_field(q)
        print(f"q = {q}")
        for t in range(q):
            fib = DworkFiber(field, 3, t)
            n1 = count_points(fib)
            tag = "smooth" if fib.is_smooth() else "singular"
            line = f"  t={t:3d}  #Y={n1:4d}  {tag}"
            if fib.is_smooth() and t != 0:
                tr = eigentrace_charsum((0, 0, 0), fib)
                lefschetz = CycloElem.rational(3, 1 + q) - tr.value
                ok = lefschetz == CycloElem.rational(3, n1)
                line += f"  trace={tr.value}  lefschetz={'ok' if ok else 'MISMATCH'}"
            if args.ext > 1:
                line += f"  #Y(ext {args.ext})={count_points(fib, m=args.ext)}"
            print(line)
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
