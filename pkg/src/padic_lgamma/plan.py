"""Fixed-seed sampling plan shared by the CLI suite, tests and scripts.

Points are exact rational polynomials in g (tuples of Fractions), so a plan
can be printed, re-parsed and evaluated in any context of the right degree.
Each point belongs to one of the regimes below:

* ``negative``  – v(x) < 0 (rationals with p in the denominator)
* ``unit``      – Z_p units
* ``pZp``       – nonzero elements of p Z_p
* ``ext_unit``  – Q_{p^2} points whose residue is outside F_p
* ``ext_fp``    – Q_{p^2} integers outside Z_p whose residue lies in F_p
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .core import PadicContext, from_poly

REGIMES = ("negative", "unit", "pZp", "ext_unit", "ext_fp")
EXTENSION_REGIMES = ("ext_unit", "ext_fp")
WP_REGIMES = ("negative", "ext_unit")
DIST_N = (2, 3, 4, 6, 8, 9, 12)


@dataclass(frozen=True)
class Point:
    regime: str
    coeffs: tuple[Fraction, ...]

    @property
    def degree_needed(self) -> int:
        return 2 if self.regime in EXTENSION_REGIMES else 1

    def text(self) -> str:
        """The point in the CLI input grammar."""
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0 and i:
                continue
            mono = "" if i == 0 else "*g" if i == 1 else f"*g^{i}"
            parts.append(f"{c}{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def value(self, ctx: PadicContext, prec: int | None = None):
        if self.degree_needed > ctx.f:
            raise ValueError(f"{self.regime} point needs an extension of degree >= {self.degree_needed}")
        return from_poly(ctx, list(self.coeffs), prec)


def _rng(seed: int, *tag) -> random.Random:
    # string seeds are hashed deterministically, independent of PYTHONHASHSEED
    return random.Random(":".join(map(str, (seed,) + tag)))


def _coprime(rng: random.Random, p: int, lo: int, hi: int, allow_neg: bool = True) -> int:
    while True:
        a = rng.randint(lo, hi)
        if a % p and (allow_neg or a > 0):
            return a


def _draw(rng: random.Random, p: int, regime: str) -> tuple[Fraction, ...]:
    a = _coprime(rng, p, -30, 30)
    b = _coprime(rng, p, 1, 12, allow_neg=False)
    base = Fraction(a, b)
    if regime == "negative":
        return (base / p ** rng.randint(1, 2),)
    if regime == "unit":
        return (base,)
    if regime == "pZp":
        return (base * p ** rng.randint(1, 2),)
    c = Fraction(_coprime(rng, p, -9, 9), _coprime(rng, p, 1, 5, allow_neg=False))
    if regime == "ext_unit":
        # the default quadratic modulus has a root g with residue outside F_p
        return (Fraction(rng.randint(-20, 20), b), c)
    if regime == "ext_fp":
        return (base, c * p)
    raise ValueError(f"unknown regime {regime!r}")


def sample_points(p: int, regime: str, k: int, seed: int = 0) -> list[Point]:
    """k distinct points of one regime, deterministic in (p, regime, seed)."""
    rng = _rng(seed, p, regime)
    out: list[Point] = []
    seen = set()
    while len(out) < k:
        coeffs = _draw(rng, p, regime)
        if coeffs in seen:
            continue
        seen.add(coeffs)
        out.append(Point(regime, coeffs))
    return out


def mixed_points(p: int, k_per_regime: int, seed: int = 0, regimes=REGIMES) -> list[Point]:
    pts: list[Point] = []
    for regime in regimes:
        pts.extend(sample_points(p, regime, k_per_regime, seed))
    return pts


def distribution_pairs(p: int, count: int, seed: int = 0, ns=DIST_N) -> list[tuple[Point, int]]:
    """(point, n) pairs cycling through every regime and every n."""
    rng = _rng(seed, p, "pairs")
    per = -(-count // len(REGIMES))
    pools = {r: sample_points(p, r, per, seed + 1) for r in REGIMES}
    pairs = []
    for i in range(count):
        regime = REGIMES[i % len(REGIMES)]
        pairs.append((pools[regime][i // len(REGIMES)], ns[(i + rng.randrange(len(ns))) % len(ns)]))
    return pairs


@dataclass(frozen=True)
class Job:
    identity: str
    point: Point | None
    n: int | None


def suite_plan(p: int, seed: int = 0) -> list[Job]:
    """A small plan touching every identity and every regime it accepts."""
    jobs: list[Job] = []
    one = {r: sample_points(p, r, 1, seed)[0] for r in REGIMES}
    for ident in ("difference", "reflection", "rp_agreement"):
        jobs.extend(Job(ident, one[r], None) for r in REGIMES)
    jobs.append(Job("raabe", one["unit"], None))
    for pt, n in distribution_pairs(p, 5, seed):
        jobs.append(Job("distribution", pt, n))
    m = next(k for k in (2, 3, 4, 5) if k % p)
    jobs.append(Job("m_lemma", one["ext_fp"], m))
    jobs.append(Job("morita_dist", one["unit"], m))
    jobs.append(Job("diamond_dist", one["ext_unit"], m))
    jobs.append(Job("restricted_dist", one["unit"], p))
    jobs.append(Job("morita_series", one["pZp"], None))
    jobs.append(Job("wp_agreement", one["negative"], None))
    jobs.append(Job("gamma_consistency", None, 7))
    return jobs


__all__ = [
    "DIST_N",
    "EXTENSION_REGIMES",
    "Job",
    "Point",
    "REGIMES",
    "WP_REGIMES",
    "distribution_pairs",
    "mixed_points",
    "sample_points",
    "suite_plan",
]
