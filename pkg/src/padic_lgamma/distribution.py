"""Shift sequences, the distribution formula and the identity checker.

For n = m p^r the sum sum_{k<n} lp((x+k)/n) collapses onto the orbit
x_0 = x, x_{j+1} = (x_j + p - ell(x_j))/p, followed while x_j stays integral
with residue in F_p and for at most r steps.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .core import (
    DomainError,
    PadicContext,
    PadicNumber,
    PrecisionError,
    ceil_p_rational,
    chi,
    dwork_shift,
    ell,
    from_rational,
    in_Wp,
    in_Zp_certified,
    render,
    residue,
    valuation,
)
from .logarithm import log_p
from .loggamma import (
    LambdaTable,
    lambda_table,
    ld,
    lm,
    lm_series,
    lp,
    lp_prime,
    morita_gamma_nat,
    rp_closed,
    rp_integral,
    rp_rational,
)
from .volkenborn import ConvergencePolicy, IntegralResult, integrate

R_EXHAUSTED = "r-exhausted"
LEFT_RING = "left-integral-ring"
LEFT_FP = "residue-left-Fp"


def factor_n(p: int | PadicContext, n: int) -> tuple[int, int]:
    """Split n = m p^r with p not dividing m."""
    if isinstance(p, PadicContext):
        p = p.p
    if n < 1:
        raise ValueError("n must be >= 1")
    r = 0
    while n % p == 0:
        n //= p
        r += 1
    return n, r


@dataclass(frozen=True)
class ShiftSequence:
    x_list: tuple[PadicNumber, ...]
    ell_list: tuple[int, ...]
    m: int
    r: int
    stop_reason: str

    @property
    def omega(self) -> int:
        return len(self.x_list) - 1

    def render(self) -> str:
        from .core import rational_form

        items = ", ".join(rational_form(x) or render(x) for x in self.x_list)
        return f"[{items}] ω={self.omega} ({self.stop_reason})"


def build_sequence(x: PadicNumber, n: int) -> ShiftSequence:
    p = x.ctx.p
    m, r = factor_n(p, n)
    xs = [x]
    ells: list[int] = []
    while True:
        j = len(xs) - 1
        xj = xs[-1]
        try:
            outside = in_Wp(xj)
        except PrecisionError as exc:
            raise PrecisionError(f"regime of x_{j} undecidable: {exc}") from exc
        # a point of W_p ends the orbit even when j == r
        if outside:
            reason = LEFT_RING if xj.unit is not None and xj.v < 0 else LEFT_FP
            break
        if j == r:
            reason = R_EXHAUSTED
            break
        l = ell(xj)
        ells.append(l)
        xs.append((xj + (p - l)) / p)
    return ShiftSequence(tuple(xs), tuple(ells), m, r, reason)


# ---------------------------------------------------------------------------
# evaluation bookkeeping


@dataclass
class Ledger:
    """Collects every integral evaluated while forming one side of an identity."""

    entries: list[tuple[str, IntegralResult]] = field(default_factory=list)

    def add(self, label: str, res: IntegralResult) -> PadicNumber:
        self.entries.append((label, res))
        return res.certified()

    def lp(self, y: PadicNumber, policy: ConvergencePolicy, label: str = "lp") -> PadicNumber:
        return self.add(f"{label}({_show(y)})", lp(y, policy))

    def summary(self) -> list[dict]:
        return [
            {"label": lab, "achieved": r.achieved_prec, "depth": r.depth, "trace": list(r.trace)}
            for lab, r in self.entries
        ]


def _show(y: PadicNumber) -> str:
    from .core import rational_form

    return rational_form(y) or render(y)


def _log_n(ctx: PadicContext, n: int, policy: ConvergencePolicy) -> PadicNumber:
    return log_p(from_rational(ctx, n, 1, policy.working_prec + 2))


def _lp_sum(points, policy: ConvergencePolicy, ledger: Ledger, fn=None) -> PadicNumber:
    total = None
    for y in points:
        term = ledger.lp(y, policy) if fn is None else fn(y)
        total = term if total is None else total + term
    return total


def dist_lhs(x: PadicNumber, n: int, policy: ConvergencePolicy, ledger: Ledger | None = None) -> PadicNumber:
    """sum_{k<n} lp((x+k)/n), at certified precision."""
    ledger = ledger if ledger is not None else Ledger()
    return _lp_sum(((x + k) / n for k in range(n)), policy, ledger)


def dist_rhs(
    x: PadicNumber,
    n: int,
    policy: ConvergencePolicy,
    ledger: Ledger | None = None,
    seq: ShiftSequence | None = None,
) -> PadicNumber:
    """sum_j lp(x_j) - log_p(n) sum_j R_P(x_j) over the shift sequence."""
    ledger = ledger if ledger is not None else Ledger()
    seq = seq if seq is not None else build_sequence(x, n)
    lp_part = _lp_sum(seq.x_list, policy, ledger)
    rp_part = None
    for xj in seq.x_list:
        t = rp_closed(xj)
        rp_part = t if rp_part is None else rp_part + t
    return lp_part - _log_n(x.ctx, n, policy) * rp_part


def morita_rhs(x: PadicNumber, n: int, lp_x: PadicNumber, policy: ConvergencePolicy) -> PadicNumber:
    """lm(x) - (x - ceil(x/p)) log_p(n), the classical form for x in Z_p, p ∤ n."""
    return lp_x - (x - dwork_shift(x)) * _log_n(x.ctx, n, policy)


def diamond_rhs(x: PadicNumber, n: int, lp_x: PadicNumber, policy: ConvergencePolicy) -> PadicNumber:
    """ld(x) - (x - 1/2) log_p(n), the classical form on W_p."""
    return lp_x - (x - Fraction(1, 2)) * _log_n(x.ctx, n, policy)


# ---------------------------------------------------------------------------
# reports


@dataclass
class CheckReport:
    identity: str
    inputs: dict
    lhs: PadicNumber
    rhs: PadicNumber
    residual_valuation: int
    target: int
    passed: bool
    trace: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def achieved(self) -> int:
        return min(self.lhs.abs_prec, self.rhs.abs_prec)

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "inputs": self.inputs,
            "lhs": render(self.lhs),
            "rhs": render(self.rhs),
            "residual_valuation": int(self.residual_valuation),
            "target": self.target,
            "pass": self.passed,
            "trace": self.trace,
        }

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        args = ", ".join(f"{k}={v}" for k, v in self.inputs.items() if k in ("p", "f", "x", "n"))
        return (
            f"[{status}] {self.identity}({args}): residual v >= {int(self.residual_valuation)}, "
            f"threshold min(N={self.target}, achieved={self.achieved})"
        )


def residual(lhs: PadicNumber, rhs: PadicNumber) -> int:
    return int(valuation(lhs - rhs))


def _report(identity, x, n, policy, N, lhs, rhs, ledgers, notes=None) -> CheckReport:
    res = residual(lhs, rhs)
    threshold = min(N, lhs.abs_prec, rhs.abs_prec)
    ctx = lhs.ctx
    inputs = {
        "p": ctx.p,
        "f": ctx.f,
        "x": None if x is None else _show(x),
        "n": n,
        "policy": asdict(policy),
    }
    trace = {name: led.summary() for name, led in ledgers.items()}
    return CheckReport(identity, inputs, lhs, rhs, res, N, res >= threshold, trace, list(notes or []))


# ---------------------------------------------------------------------------
# identity catalogue


def _need_n(identity: str, n: int | None) -> int:
    if n is None or n < 1:
        raise DomainError(f"{identity} needs a positive n")
    return n


def _check_difference(x, n, policy, N):
    L, R = Ledger(), Ledger()
    lhs = L.lp(x + 1, policy) - L.lp(x, policy)
    rhs = log_p(x) if chi(x) else x.ctx.zero(policy.working_prec)
    return lhs, rhs, {"lhs": L, "rhs": R}


def _check_reflection(x, n, policy, N):
    L = Ledger()
    lhs = L.lp(1 - x, policy) + L.lp(x, policy)
    return lhs, x.ctx.zero(policy.working_prec), {"lhs": L}


def _check_raabe(x, n, policy, N):
    p = x.ctx.p
    inner = ConvergencePolicy.nested(p, target_prec=N)
    outer = ConvergencePolicy.nested(p, target_prec=N)
    L, R = Ledger(), Ledger()

    def inner_lp(y: PadicNumber) -> PadicNumber:
        return lp(y, inner).value

    lhs = L.add("int lp(x+t)", integrate(inner_lp, x, outer))
    # the factor x - 1 may have negative valuation; budget lp' so the product keeps N digits
    factor = x - 1
    loss = max(0, -factor.v) if factor.unit is not None else 0
    deriv_policy = replace(policy, target_prec=max(policy.target_prec, N + loss))
    deriv = R.add(f"lp'({_show(x)})", lp_prime(x, deriv_policy))
    rhs = (x - 1) * deriv - rp_closed(x)
    return lhs, rhs, {"lhs": L, "rhs": R}


def _check_rp(x, n, policy, N):
    R = Ledger()
    lhs = rp_closed(x)
    rhs = R.add(f"rp_int({_show(x)})", rp_integral(x, policy))
    return lhs, rhs, {"rhs": R}


def _check_distribution(x, n, policy, N):
    n = _need_n("distribution", n)
    L, R = Ledger(), Ledger()
    seq = build_sequence(x, n)
    lhs = dist_lhs(x, n, policy, L)
    rhs = dist_rhs(x, n, policy, R, seq)
    note = f"sequence {seq.render()}"
    return lhs, rhs, {"lhs": L, "rhs": R}, [note]


def _check_m_lemma(x, n, policy, N):
    m = _need_n("m_lemma", n)
    p = x.ctx.p
    if m % p == 0:
        raise DomainError("m_lemma needs p ∤ m")
    L, R = Ledger(), Ledger()
    lhs = dist_lhs(x, m, policy, L)
    rhs = R.lp(x, policy) - _log_n(x.ctx, m, policy) * rp_closed(x)
    return lhs, rhs, {"lhs": L, "rhs": R}


def _check_morita_dist(x, n, policy, N):
    n = _need_n("morita_dist", n)
    if not in_Zp_certified(x) or n % x.ctx.p == 0:
        raise DomainError("morita_dist needs x in Z_p and p ∤ n")
    L, R = Ledger(), Ledger()
    lhs = None
    for k in range(n):
        t = L.add("lm", lm((x + k) / n, policy))
        lhs = t if lhs is None else lhs + t
    lp_x = R.add("lm(x)", lm(x, policy))
    rhs = morita_rhs(x, n, lp_x, policy)
    return lhs, rhs, {"lhs": L, "rhs": R}


def _check_diamond_dist(x, n, policy, N):
    n = _need_n("diamond_dist", n)
    if not in_Wp(x):
        raise DomainError("diamond_dist needs x in W_p")
    L, R = Ledger(), Ledger()
    lhs = None
    for k in range(n):
        t = L.add("ld", ld((x + k) / n, policy))
        lhs = t if lhs is None else lhs + t
    ld_x = R.add("ld(x)", ld(x, policy))
    rhs = diamond_rhs(x, n, ld_x, policy)
    return lhs, rhs, {"lhs": L, "rhs": R}


def _check_restricted_dist(x, n, policy, N):
    n = _need_n("restricted_dist", n)
    p = x.ctx.p
    if not in_Zp_certified(x) or n % p:
        raise DomainError("restricted_dist needs x in Z_p and p | n")
    L, R = Ledger(), Ledger()
    pts = []
    for j in range(n):
        if residue(x + j).is_zero():
            continue
        pts.append((x + j) / n)
    lhs = _lp_sum(pts, policy, L)
    rhs = R.lp(x, policy) - rp_closed(x) * _log_n(x.ctx, n, policy)
    return lhs, rhs, {"lhs": L, "rhs": R}


@lru_cache(maxsize=32)
def cached_lambda_table(ctx: PadicContext, K: int, policy: ConvergencePolicy) -> LambdaTable:
    return lambda_table(ctx, K, policy)


def _check_morita_series(x, n, policy, N):
    if x.unit is not None and x.v < 1:
        raise DomainError("morita_series needs v(x) >= 1")
    table = cached_lambda_table(x.ctx.with_prec(policy.working_prec), 2 * N, policy)
    R = Ledger()
    for i, e in enumerate(table.entries, 1):
        R.add(f"lambda_{i}", e)
    lhs = lm_series(x, table, target=N)
    rhs = R.lp(x, policy)
    return lhs, rhs, {"series": R}


def _check_gamma(x, n, policy, N):
    n = _need_n("gamma_consistency", n)
    ctx = x.ctx if x is not None else None
    L = Ledger()
    lhs = L.lp(from_rational(ctx, n, 1, policy.working_prec), policy)
    rhs = log_p(from_rational(ctx, morita_gamma_nat(ctx.p, n), 1, policy.working_prec))
    return lhs, rhs, {"lhs": L}


def _check_wp(x, n, policy, N):
    if not in_Wp(x):
        raise DomainError("wp_agreement needs x in W_p")
    L, R = Ledger(), Ledger()
    lhs = L.add(f"ld({_show(x)})", ld(x, policy))
    rhs = R.lp(x, policy)
    return lhs, rhs, {"lhs": L, "rhs": R}


def dist_rhs_from_value(x: PadicNumber, n: int, lp_x: PadicNumber, policy: ConvergencePolicy) -> PadicNumber:
    """General right-hand side for a length-one sequence, given lp(x)."""
    return lp_x - _log_n(x.ctx, n, policy) * rp_closed(x)


IDENTITIES: dict[str, Callable] = {
    "difference": _check_difference,
    "reflection": _check_reflection,
    "raabe": _check_raabe,
    "rp_agreement": _check_rp,
    "distribution": _check_distribution,
    "m_lemma": _check_m_lemma,
    "morita_dist": _check_morita_dist,
    "diamond_dist": _check_diamond_dist,
    "restricted_dist": _check_restricted_dist,
    "morita_series": _check_morita_series,
    "gamma_consistency": _check_gamma,
    "wp_agreement": _check_wp,
}

NEEDS_N = {"distribution", "m_lemma", "morita_dist", "diamond_dist", "restricted_dist", "gamma_consistency"}


def check_identity(
    identity: str,
    x: PadicNumber,
    n: int | None = None,
    policy: ConvergencePolicy | None = None,
    N: int | None = None,
) -> CheckReport:
    """Evaluate both sides of a catalogued identity and compare them."""
    if identity not in IDENTITIES:
        raise KeyError(f"unknown identity {identity!r}; known: {', '.join(IDENTITIES)}")
    ctx = x.ctx
    if policy is None:
        policy = ConvergencePolicy.default(ctx.p, target_prec=N if N is not None else 5)
    N = policy.target_prec if N is None else N
    out = IDENTITIES[identity](x, n, policy, N)
    lhs, rhs, ledgers = out[:3]
    notes = out[3] if len(out) > 3 else None
    shown_x = None if identity == "gamma_consistency" else x
    return _report(identity, shown_x, n, policy, N, lhs, rhs, ledgers, notes)


def specialization_matches(
    x: PadicNumber, n: int, policy: ConvergencePolicy, lp_x: PadicNumber | None = None
) -> bool:
    """The classical right-hand side equals the general one (length-one sequences).

    Both are built from the same lp(x) value, so agreement is a statement about
    the R_P factor and must hold digit for digit.
    """
    seq = build_sequence(x, n)
    if seq.omega != 0:
        raise DomainError("specializations apply only to length-one sequences")
    if lp_x is None:
        lp_x = lp(x, policy).certified()
    general = dist_rhs_from_value(x, n, lp_x, policy)
    if in_Wp(x):
        special = diamond_rhs(x, n, lp_x, policy)
    elif in_Zp_certified(x) and n % x.ctx.p:
        special = morita_rhs(x, n, lp_x, policy)
    else:
        raise DomainError("no classical specialization for this (x, n)")
    diff = general - special
    return diff.unit is None and diff.v >= min(general.abs_prec, special.abs_prec)


def rp_matches_dwork(x: Fraction | int, p: int) -> bool:
    """Exact rational check R_P(x) = x - ceil(x/p) for x in Z_(p)."""
    x = Fraction(x)
    return rp_rational(x, p) == x - ceil_p_rational(x, p)


__all__ = [
    "CheckReport",
    "IDENTITIES",
    "LEFT_FP",
    "LEFT_RING",
    "Ledger",
    "NEEDS_N",
    "R_EXHAUSTED",
    "ShiftSequence",
    "build_sequence",
    "check_identity",
    "diamond_rhs",
    "dist_lhs",
    "dist_rhs",
    "factor_n",
    "morita_rhs",
    "residual",
    "rp_matches_dwork",
    "specialization_matches",
]
