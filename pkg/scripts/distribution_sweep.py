#!/usr/bin/env python3
"""Check the distribution theorem over the fixed-seed sampling plan.

Prints one line per (x, n) pair with the shift sequence, the residual and the
threshold, and a per-regime summary at the end.  Use --json for the full
reports.

    python scripts/distribution_sweep.py --p 2 --count 35
    python scripts/distribution_sweep.py --p 3 --count 10 --N 5 --json > sweep.json
"""

from __future__ import annotations

import argparse
import json
import time
from collections import Counter

from padic_lgamma import build_sequence, check_identity, ctx_new
from padic_lgamma.plan import DIST_N, distribution_pairs


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--count", type=int, default=35)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--N", type=int, default=4)
    ap.add_argument("--n", type=int, nargs="+", default=list(DIST_N), help="values of n to cycle through")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    t0 = time.perf_counter()
    reports = []
    tally: Counter = Counter()
    for pt, n in distribution_pairs(args.p, args.count, args.seed, ns=tuple(args.n)):
        x = pt.value(ctx_new(args.p, pt.degree_needed, 40))
        seq = build_sequence(x, n)
        rep = check_identity("distribution", x, n, N=args.N)
        reports.append(rep.to_json())
        tally[(pt.regime, rep.passed)] += 1
        if not args.json:
            print(f"{pt.regime:<9} n={n:<3} {seq.render():<44} {rep.line()}")
    if args.json:
        print(json.dumps(reports, indent=2, ensure_ascii=False))
        return
    print()
    for regime in sorted({r for r, _ in tally}):
        print(f"{regime:<9} pass {tally[(regime, True)]:>3}  fail {tally[(regime, False)]:>3}")
    print(f"{len(reports)} pairs in {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
