#!/usr/bin/env python3
"""Survey of shift-sequence lengths and stop reasons.

For integral points of an unramified extension whose residue lies in F_p the
orbit x -> (x + p - ell(x))/p can run for several steps before leaving; this
script tabulates how often each length s (steps before leaving, ignoring the
cap r) occurs, by regime, to see whether finite positive s shows up in
natural families.

    python scripts/sequence_survey.py --p 3 --samples 2000
"""

from __future__ import annotations

import argparse
import random
from collections import Counter
from fractions import Fraction

from padic_lgamma import build_sequence, ctx_new
from padic_lgamma.plan import REGIMES, sample_points


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--samples", type=int, default=500, help="points per regime")
    ap.add_argument("--cap", type=int, default=12, help="r used to cap the orbit (n = p^cap)")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    ctx = ctx_new(args.p, 2, 60)
    n = args.p**args.cap
    print(f"p={args.p}, n=p^{args.cap}; columns: length s (cap {args.cap} means never left)")
    for regime in REGIMES:
        lengths: Counter = Counter()
        reasons: Counter = Counter()
        for pt in sample_points(args.p, regime, args.samples, args.seed):
            seq = build_sequence(pt.value(ctx), n)
            lengths[seq.omega] += 1
            reasons[seq.stop_reason] += 1
        hist = ", ".join(f"s={k}: {v}" for k, v in sorted(lengths.items()))
        print(f"{regime:<9} {hist}")
        print(f"{'':<9} {dict(reasons)}")

    # integral family a + c p^k g with p ∤ c: the g-part loses one power of p per step
    rng = random.Random(args.seed)
    print("family a + c*p^k*g (a, c random, p ∤ c):")
    for k in range(0, 6):
        lengths = Counter()
        for _ in range(args.samples):
            a = Fraction(rng.randint(-50, 50), rng.choice([b for b in range(1, 12) if b % args.p]))
            c = rng.choice([c for c in range(-9, 10) if c % args.p])
            lengths[build_sequence(ctx([a, c * args.p**k]), n).omega] += 1
        print(f"  k={k}: " + ", ".join(f"s={s}: {v}" for s, v in sorted(lengths.items())))


if __name__ == "__main__":
    main()
