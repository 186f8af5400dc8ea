#!/usr/bin/env python3
"""Certified precision of a Volkenborn integral as a function of depth.

For each depth n_max the integral is evaluated with n_min = n_max (so the
depth is forced) and the achieved precision, the difference trace and the
true error against a deep reference are printed.  Plain Riemann sums and the
extrapolated mode are shown side by side.

    python scripts/convergence_trace.py --p 3 --fn lp --x 1/3
    python scripts/convergence_trace.py --p 5 --f 2 --fn rp --x "g" --depths 2-6
"""

from __future__ import annotations

import argparse
import time

from padic_lgamma import ConvergencePolicy, ctx_new, integrate, valuation
from padic_lgamma.cli import parse_value
from padic_lgamma.loggamma import _rp_integrand, phi_p, phi_p_prime

INTEGRANDS = {"lp": phi_p, "lp_prime": phi_p_prime, "rp": _rp_integrand}


def depth_range(text: str) -> range:
    lo, _, hi = text.partition("-")
    return range(int(lo), int(hi or lo) + 1)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--f", type=int, default=1)
    ap.add_argument("--fn", choices=sorted(INTEGRANDS), default="lp")
    ap.add_argument("--x", default="1/3")
    ap.add_argument("--depths", default="2-7", help="range of forced depths, e.g. 2-7")
    ap.add_argument("--ref-depth", type=int, default=None, help="depth of the extrapolated reference")
    args = ap.parse_args()

    ctx = ctx_new(args.p, args.f, 80)
    x = parse_value(args.x, ctx)
    f = INTEGRANDS[args.fn]
    ref_depth = args.ref_depth or max(depth_range(args.depths)) + 2
    ref = integrate(f, x, ConvergencePolicy(n_min=ref_depth, n_max=ref_depth, target_prec=20, extrapolate=True))
    print(f"reference: depth {ref.depth}, certified {ref.achieved_prec} digits")
    print(f"{'mode':<7}{'depth':>6}{'certified':>10}{'true':>6}{'time':>8}  trace")
    for n in depth_range(args.depths):
        for extrapolate in (False, True):
            pol = ConvergencePolicy(n_min=n, n_max=n, target_prec=20, extrapolate=extrapolate)
            t0 = time.perf_counter()
            r = integrate(f, x, pol)
            dt = time.perf_counter() - t0
            true = min(int(valuation(r.value - ref.value)), ref.achieved_prec)
            flag = "" if true >= r.achieved_prec else "  OVERCLAIM"
            mode = "extrap" if extrapolate else "plain"
            print(f"{mode:<7}{n:>6}{r.achieved_prec:>10}{true:>6}{dt:>7.2f}s  {list(r.trace)}{flag}")


if __name__ == "__main__":
    main()
