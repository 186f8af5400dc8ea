"""Log-gamma functions defined by Volkenborn integrals, and their companions.

``lp`` is the locally analytic log-gamma function obtained by integrating
phi_p(y) = y (log_p y - 1) chi(y); ``ld`` drops the chi factor (defined off
Z_p) and ``lm`` is ``lp`` restricted to Z_p.  ``rp_closed`` is the explicit
value of the integral of y chi(y) that appears in every distribution formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    DomainError,
    PadicContext,
    PadicNumber,
    PrecisionError,
    chi,
    from_rational,
    in_Zp_certified,
    notin_Zp_certified,
    residue,
    valuation,
)
from .logarithm import log_p
from .volkenborn import ConvergencePolicy, IntegralResult, integrate


def _zero_like(y: PadicNumber) -> PadicNumber:
    return y.ctx.zero(max(y.abs_prec, 1))


def phi_p(y: PadicNumber) -> PadicNumber:
    """0 on the open unit ball, y log_p(y) - y elsewhere."""
    if not chi(y):
        return _zero_like(y)
    return y * (log_p(y) - 1)


def phi_p_prime(y: PadicNumber) -> PadicNumber:
    """chi(y) log_p(y), taken as 0 where chi vanishes."""
    if not chi(y):
        return _zero_like(y)
    return log_p(y)


def _diamond_integrand(y: PadicNumber) -> PadicNumber:
    return y * (log_p(y) - 1)


def _rp_integrand(y: PadicNumber) -> PadicNumber:
    if not chi(y):
        return _zero_like(y)
    return y


def _policy(x: PadicNumber, policy: ConvergencePolicy | None) -> ConvergencePolicy:
    return policy if policy is not None else ConvergencePolicy.default(x.ctx.p)


def lp(x: PadicNumber, policy: ConvergencePolicy | None = None) -> IntegralResult:
    """Locally analytic p-adic log-gamma: integral of phi_p(x + t)."""
    return integrate(phi_p, x, _policy(x, policy))


def lp_prime(x: PadicNumber, policy: ConvergencePolicy | None = None) -> IntegralResult:
    """Derivative of ``lp``, by differentiating under the integral."""
    return integrate(phi_p_prime, x, _policy(x, policy))


def ld(x: PadicNumber, policy: ConvergencePolicy | None = None) -> IntegralResult:
    """Diamond's log-gamma, for inputs certified to lie outside Z_p."""
    if not notin_Zp_certified(x):
        raise DomainError("ld needs an argument certified outside Z_p")
    return integrate(_diamond_integrand, x, _policy(x, policy))


def lm(x: PadicNumber, policy: ConvergencePolicy | None = None) -> IntegralResult:
    """Morita's log-gamma on Z_p (the same integral as ``lp``)."""
    if not in_Zp_certified(x):
        raise DomainError("lm needs an argument in Z_p")
    return lp(x, policy)


def rp_integral(x: PadicNumber, policy: ConvergencePolicy | None = None) -> IntegralResult:
    return integrate(_rp_integrand, x, _policy(x, policy))


def rp_branch(x: PadicNumber) -> int | None:
    """The integer alpha in [0, p-1] with |x - alpha| < 1, or None."""
    if x.unit is None and x.v <= 0:
        raise PrecisionError(f"R_P branch undecidable for O(p^{x.v})")
    if x.unit is not None and x.v < 0:
        return None
    r = residue(x)
    if not r.in_Fp():
        return None
    return r.coeffs[0]


def rp_closed(x: PadicNumber) -> PadicNumber:
    """Closed form of the integral of (x+t) chi(x+t).

    x - x/p + alpha/p - ceil(alpha/p) when x is within distance < 1 of an
    integer alpha, else x - 1/2.
    """
    alpha = rp_branch(x)
    p = x.ctx.p
    if alpha is None:
        return x - Fraction(1, 2)
    return x - x / p + Fraction(alpha, p) - (1 if alpha else 0)


def rp_rational(x: Fraction | int, p: int) -> Fraction:
    """Exact value of R_P at a rational argument."""
    x = Fraction(x)
    vden = 0
    d = x.denominator
    while d % p == 0:
        d //= p
        vden += 1
    if vden:
        return x - Fraction(1, 2)
    alpha = x.numerator * pow(x.denominator, -1, p) % p
    return x - x / p + Fraction(alpha, p) - (1 if alpha else 0)


def morita_gamma_nat(p: int | PadicContext, n: int) -> int:
    """Morita's gamma at a positive integer: (-1)^n prod_{j<n, p∤j} j."""
    if isinstance(p, PadicContext):
        p = p.p
    if n < 1:
        raise ValueError("n must be >= 1")
    out = 1
    for j in range(1, n):
        if j % p:
            out *= j
    return -out if n % 2 else out


# ---------------------------------------------------------------------------
# series at 0


@dataclass(frozen=True)
class LambdaTable:
    """Coefficients lambda_1..lambda_K of the expansion of lm around 0."""

    ctx: PadicContext
    entries: tuple[IntegralResult, ...]

    @property
    def K(self) -> int:
        return len(self.entries)

    def values(self) -> list[PadicNumber]:
        return [e.certified() for e in self.entries]

    @property
    def achieved_prec(self) -> int:
        return min(e.achieved_prec for e in self.entries)


def _unit_log(t: PadicNumber) -> PadicNumber:
    if not t or t.v != 0:
        return _zero_like(t)
    return log_p(t)


def _unit_power(n: int):
    def integrand(t: PadicNumber) -> PadicNumber:
        if not t or t.v != 0:
            return _zero_like(t)
        return t**-n

    return integrand


def lambda_table(ctx: PadicContext, K: int, policy: ConvergencePolicy | None = None) -> LambdaTable:
    """lambda_1 = int chi_{Z_p^*}(t) log_p t dt, lambda_{n+1} = int chi_{Z_p^*}(t) t^-n dt."""
    if K < 1:
        raise ValueError("K must be >= 1")
    policy = policy if policy is not None else ConvergencePolicy.default(ctx.p)
    zero = ctx.zero(policy.working_prec)
    entries = [integrate(_unit_log, zero, policy)]
    for n in range(1, K):
        entries.append(integrate(_unit_power(n), zero, policy))
    return LambdaTable(ctx, tuple(entries))


def _vp_le(k: int, p: int) -> int:
    """floor(log_p k), an upper bound for v_p(n(n+1)) when n + 1 <= k."""
    e = 0
    while k >= p:
        k //= p
        e += 1
    return e


def series_tail_bound(vx: int, K: int, p: int, lam_floor: int) -> int:
    """Lower bound on the valuation of every omitted term n >= K."""
    # (n+1) vx - v(n(n+1)) + lam_floor is nondecreasing in n
    return (K + 1) * vx - _vp_le(K + 1, p) + lam_floor


def lm_series(x: PadicNumber, table: LambdaTable, target: int | None = None) -> PadicNumber:
    """lambda_1 x + sum_{n>=1} (-1)^(n+1) lambda_{n+1} x^(n+1) / (n(n+1)) on v(x) >= 1."""
    if x.unit is None:
        if x.v < 1:
            raise PrecisionError("lm_series needs v(x) >= 1")
        return x.ctx.zero(min(x.v, table.achieved_prec))
    if x.v < 1:
        raise DomainError("lm_series needs v(x) >= 1")
    lams = table.values()
    p = x.ctx.p
    lam_floor = min(0, min(valuation(l) for l in lams))
    tail = series_tail_bound(x.v, table.K, p, lam_floor)
    if target is not None and tail < target:
        raise DomainError(f"table depth K={table.K} gives tail bound {tail} < {target}")
    total = lams[0] * x
    xk = x
    for n in range(1, table.K):
        xk = xk * x
        term = lams[n] * xk / (n * (n + 1))
        total = total + term if n % 2 else total - term
    return total.truncate_abs(tail)


__all__ = [
    "LambdaTable",
    "lambda_table",
    "ld",
    "lm",
    "lm_series",
    "lp",
    "lp_prime",
    "morita_gamma_nat",
    "phi_p",
    "phi_p_prime",
    "rp_closed",
    "rp_integral",
    "rp_rational",
    "series_tail_bound",
    "from_rational",
]
