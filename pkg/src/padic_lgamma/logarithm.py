"""Iwasawa p-adic logarithm, normalized by log_p(p) = 0."""

from __future__ import annotations

from functools import lru_cache

from .core import (
    DomainError,
    PadicNumber,
    PrecisionError,
    _make,
    _pmul,
    _ppow,
    _teich_raw,
)


@lru_cache(maxsize=None)
def series_terms(vz: int, target: int, p: int) -> int:
    """Smallest K with k*vz - floor(log_p k) >= target for every k > K."""
    K = 0
    k = 1
    # k*vz - floor(log_p k) is nondecreasing in k
    while True:
        lg = 0
        t = k
        while t >= p:
            t //= p
            lg += 1
        if k * vz - lg >= target:
            return K
        K = k
        k += 1


def _ceil_log(K: int, p: int) -> int:
    e, t = 0, 1
    while t < K:
        t *= p
        e += 1
    return e


@lru_cache(maxsize=None)
def _series_plan(vz: int, target: int, p: int) -> tuple[int, int, tuple]:
    """(p-power reduction k, modulus, ((shift divisor, inverse, sign), ...))."""
    pow_cost = p.bit_length() + bin(p).count("1") - 1
    best = None
    for k in range(0, 5):
        cost = k * pow_cost + series_terms(vz + k, target + k, p)
        if best is None or cost < best[0]:
            best = (cost, k)
    k = best[1]
    K = series_terms(vz + k, target + k, p)
    M = p ** (target + k + _ceil_log(K, p) + 2)
    terms = []
    for n in range(1, K + 1):
        e, nn = 0, n
        while nn % p == 0:
            nn //= p
            e += 1
        terms.append((p**e, pow(nn, -1, M), 1 if n % 2 else -1))
    return k, M, tuple(terms)


def _log1p_raw(z: tuple, vz: int, target: int, ctx) -> tuple:
    """Coefficients modulo p^target of log(1 + z), where v(z) = vz >= 1."""
    p = ctx.p
    k, M, terms = _series_plan(vz, target, p)
    if k:
        # log(1+z) = p^-k log((1+z)^(p^k)); the power is known to k more digits
        w = _ppow(((z[0] + 1) % M,) + z[1:], p**k, ctx, M)
        z = ((w[0] - 1) % M,) + w[1:]
        if not any(z):
            return (0,) * ctx.f
    f = ctx.f
    acc = [0] * f
    zk = z
    first = True
    for d, inv, sign in terms:
        if first:
            first = False
        else:
            zk = _pmul(zk, z, ctx, M)
        # z^n is divisible by p^(n*vz) and n*vz > v_p(n), so the shift is exact
        if d == 1:
            for i in range(f):
                acc[i] += sign * zk[i] * inv
        else:
            for i in range(f):
                acc[i] += sign * (zk[i] // d) * inv
    Mt = p ** (target + k)
    out = tuple(c % Mt for c in acc)
    if k:
        pk = p**k
        out = tuple(c // pk for c in out)
    return out


def log_p(x: PadicNumber) -> PadicNumber:
    """Iwasawa logarithm.

    Writes x = p^v * w * u1 with w a root of unity and u1 = 1 mod p, then
    sums the log(1 + z) series for u1.  The result has absolute precision
    equal to the relative precision of x.
    """
    if x.unit is None:
        raise PrecisionError("logarithm of a value indistinguishable from zero")
    ctx = x.ctx
    p = ctx.p
    A = x.prec
    M = p**A
    r = tuple(c % p for c in x.unit)
    # w^-1 is the Teichmüller lift of the inverse residue
    w_inv = _teich_raw(ctx, _residue_inverse(r, ctx), A)
    u1 = _pmul(x.unit, w_inv, ctx, M)
    target = A
    if p == 2:
        # log x = log(x^2)/2 with x^2 = 1 mod 4, known to one more digit
        target = A + 1
        M = p**target
        u1 = _pmul(u1, u1, ctx, M)
    z = ((u1[0] - 1) % M,) + u1[1:]
    if not any(z):
        return ctx.zero(A)
    vz = _coeff_valuation(z, p)
    if vz >= target:
        return ctx.zero(A)
    out = _make(ctx, 0, _log1p_raw(z, vz, target, ctx), target)
    if p == 2:
        out = out / 2
    return out


def _coeff_valuation(z: tuple, p: int) -> int:
    v = 0
    while all(c % p == 0 for c in z):
        z = tuple(c // p for c in z)
        v += 1
    return v


@lru_cache(maxsize=4096)
def _residue_inverse(r: tuple, ctx) -> tuple:
    if ctx.f == 1:
        return (pow(r[0], -1, ctx.p),)
    return _ppow(r, ctx.q - 2, ctx, ctx.p)


def log_int(ctx, n: int, prec: int | None = None) -> PadicNumber:
    """log_p of a nonzero integer; log_p(n) = log_p(m) for n = m p^r."""
    if n == 0:
        raise DomainError("log_p(0)")
    from .core import from_rational

    return log_p(from_rational(ctx, n, 1, prec))
