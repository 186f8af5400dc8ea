"""Truncated arithmetic in Q_p and its unramified extensions.

An element is stored as ``p^v * u(g)`` where ``u`` is a polynomial of degree
< f in the generator ``g`` (a root of the context modulus) whose integer
coefficients are known modulo ``p^prec``.  Every value carries its own
relative precision; arithmetic propagates it (products keep the smaller
relative precision, sums keep the smaller absolute precision).  A value whose
known digits all vanish is a first-class "zero to absolute precision A".

Python ``int`` and ``Fraction`` operands are exact and never limit precision.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable, Sequence


class PadicError(ArithmeticError):
    """Base class for p-adic arithmetic failures."""


class PrecisionError(PadicError):
    """A property cannot be certified from the known digits."""


class DomainError(PadicError, ValueError):
    """An argument is outside the domain of the operation."""


class AtLeast(int):
    """Integer marker meaning "valuation is at least this value".

    Returned by :func:`valuation` for values that are zero to their precision.
    Compares and computes like the plain lower bound.
    """

    def __repr__(self) -> str:
        return f"AtLeast({int(self)})"

    def __str__(self) -> str:
        return f">={int(self)}"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def vp_int(n: int, p: int) -> int:
    """Valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def vp_rational(q: Fraction | int, p: int) -> int | None:
    q = Fraction(q)
    if q == 0:
        return None
    return vp_int(q.numerator, p) - vp_int(q.denominator, p)


# ---------------------------------------------------------------------------
# polynomials over F_p (residue field)


def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _fp_trim([x % p for x in a])
    b = _fp_trim([x % p for x in b])
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _fp_trim(a)
    return a


def is_irreducible_mod_p(modulus: Sequence[int], p: int) -> bool:
    """Exhaustive factor search for a monic polynomial (coefficients low→high)."""
    deg = len(modulus) - 1
    if deg < 1 or modulus[-1] % p != 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _fp_mod(modulus, list(low) + [1], p):
                return False
    return True


def default_modulus(p: int, f: int) -> tuple[int, ...]:
    """Deterministic choice of defining polynomial, coefficients low→high."""
    if f == 1:
        return (0, 1)
    if f == 2:
        if p == 2:
            return (1, 1, 1)
        a = next(a for a in range(1, p) if pow(a, (p - 1) // 2, p) == p - 1)
        return (-a, 0, 1)
    for high_first in itertools.product(range(p), repeat=f):
        cand = tuple(reversed(high_first)) + (1,)
        if cand[0] != 0 and is_irreducible_mod_p(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------
# context


@dataclass(frozen=True)
class PadicContext:
    """Prime, extension degree, defining polynomial and default relative precision."""

    p: int
    f: int
    rel_prec: int
    modulus: tuple[int, ...]
    # g^f = sum(_red[i] * g^i)
    _red: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.f < 1:
            raise ValueError("extension degree must be >= 1")
        if self.rel_prec < 1:
            raise ValueError("relative precision must be >= 1")
        if len(self.modulus) != self.f + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree f")
        if self.f > 1 and not is_irreducible_mod_p(self.modulus, self.p):
            raise ValueError(f"modulus {self.modulus} is reducible mod {self.p}")
        object.__setattr__(self, "_red", tuple(-c for c in self.modulus[:-1]))

    @property
    def key(self) -> tuple:
        """Identifies the field; contexts with equal keys interoperate."""
        return (self.p, self.modulus)

    @property
    def q(self) -> int:
        """Size of the residue field."""
        return self.p**self.f

    def with_prec(self, rel_prec: int) -> "PadicContext":
        return replace(self, rel_prec=rel_prec)

    # convenience constructors
    def __call__(self, a, b: int = 1, prec: int | None = None) -> "PadicNumber":
        if isinstance(a, PadicNumber):
            return a
        if isinstance(a, (list, tuple)):
            return from_poly(self, a, prec)
        return from_rational(self, a, b, prec)

    def gen(self, prec: int | None = None) -> "PadicNumber":
        if self.f == 1:
            raise DomainError("Q_p has no extension generator")
        return from_poly(self, [0, 1], prec)

    def zero(self, abs_prec: int) -> "PadicNumber":
        return PadicNumber(self, abs_prec, None, 0)


def ctx_new(p: int, f: int = 1, rel_prec: int = 20, modulus: Sequence[int] | None = None) -> PadicContext:
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if f < 1:
        raise ValueError("extension degree must be >= 1")
    mod = tuple(modulus) if modulus is not None else default_modulus(p, f)
    return PadicContext(p, f, rel_prec, mod)


# ---------------------------------------------------------------------------
# raw coefficient-tuple arithmetic modulo p^k


def _pmul(a: tuple, b: tuple, ctx: PadicContext, M: int) -> tuple:
    f = ctx.f
    if f == 1:
        return ((a[0] * b[0]) % M,)
    if f == 2:
        r0, r1 = ctx._red
        a0, a1 = a
        b0, b1 = b
        hi = a1 * b1
        return ((a0 * b0 + hi * r0) % M, (a0 * b1 + a1 * b0 + hi * r1) % M)
    prod = [0] * (2 * f - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    red = ctx._red
    for d in range(2 * f - 2, f - 1, -1):
        c = prod[d]
        if c:
            base = d - f
            for i in range(f):
                prod[base + i] += c * red[i]
    return tuple(x % M for x in prod[:f])


def _ppow(a: tuple, e: int, ctx: PadicContext, M: int) -> tuple:
    result = (1,) + (0,) * (ctx.f - 1)
    if ctx.f == 1:
        return (pow(a[0], e, M),)
    base = a
    while e:
        if e & 1:
            result = _pmul(result, base, ctx, M)
        e >>= 1
        if e:
            base = _pmul(base, base, ctx, M)
    return result


def _pinv(a: tuple, ctx: PadicContext, k: int) -> tuple:
    """Inverse of a unit modulo p^k."""
    p = ctx.p
    if ctx.f == 1:
        return (pow(a[0], -1, p**k),)
    y = _ppow(tuple(c % p for c in a), ctx.q - 2, ctx, p)
    prec = 1
    while prec < k:
        prec = min(2 * prec, k)
        M = p**prec
        ay = _pmul(a, y, ctx, M)
        two_minus = tuple((-c) % M for c in ay)
        two_minus = ((two_minus[0] + 2) % M,) + two_minus[1:]
        y = _pmul(y, two_minus, ctx, M)
    return y


@lru_cache(maxsize=4096)
def _teich_raw(ctx: PadicContext, residue: tuple, k: int) -> tuple:
    """Teichmüller representative of a nonzero residue, modulo p^k."""
    M = ctx.p**k
    return _ppow(residue, ctx.q ** (k - 1), ctx, M) if k > 1 else residue


def _strip(coeffs: Iterable[int], p: int) -> tuple[int, tuple]:
    """Remove the common power of p from a nonzero coefficient tuple."""
    coeffs = tuple(coeffs)
    t = 0
    while all(c % p == 0 for c in coeffs):
        coeffs = tuple(c // p for c in coeffs)
        t += 1
    return t, coeffs


def _make(ctx: PadicContext, v: int, coeffs: Sequence[int], prec: int) -> "PadicNumber":
    """Normalize ``p^v * coeffs`` known modulo ``p^(v+prec)``."""
    if prec <= 0:
        return PadicNumber(ctx, v + prec, None, 0)
    p = ctx.p
    M = p**prec
    if ctx.f == 1:
        c = coeffs[0] % M
        if c == 0:
            return PadicNumber(ctx, v + prec, None, 0)
        t = 0
        while c % p == 0:
            c //= p
            t += 1
        return PadicNumber(ctx, v + t, (c,), prec - t)
    coeffs = tuple(c % M for c in coeffs)
    if not any(coeffs):
        return PadicNumber(ctx, v + prec, None, 0)
    if all(c % p == 0 for c in coeffs):
        t, coeffs = _strip(coeffs, p)
        v += t
        prec -= t
    return PadicNumber(ctx, v, coeffs, prec)


# ---------------------------------------------------------------------------
# the number type


class PadicNumber:
    """Element ``p^v * unit(g)`` with ``prec`` known relative digits.

    Zero-to-precision values have ``unit is None``; their ``v`` is the
    absolute precision.
    """

    __slots__ = ("ctx", "v", "unit", "prec")

    def __init__(self, ctx: PadicContext, v: int, unit: tuple | None, prec: int):
        self.ctx = ctx
        self.v = v
        self.unit = unit
        self.prec = prec

    # -- basic properties
    @property
    def zero_flag(self) -> bool:
        return self.unit is None

    @property
    def abs_prec(self) -> int:
        return self.v + self.prec

    def is_unit(self) -> bool:
        return self.unit is not None and self.v == 0

    def __bool__(self) -> bool:
        return self.unit is not None

    def __repr__(self) -> str:
        return f"PadicNumber({render(self)})"

    def __str__(self) -> str:
        return render(self)

    def __eq__(self, other) -> bool:
        """Representation identity (same digits, same precision)."""
        if not isinstance(other, PadicNumber):
            return NotImplemented
        return (
            self.ctx.key == other.ctx.key
            and self.v == other.v
            and self.unit == other.unit
            and self.prec == other.prec
        )

    def __hash__(self) -> int:
        return hash((self.ctx.key, self.v, self.unit, self.prec))

    # -- precision management
    def truncate(self, prec: int) -> "PadicNumber":
        """Keep at most ``prec`` relative digits."""
        if self.unit is None or prec >= self.prec:
            return self
        return _make(self.ctx, self.v, self.unit, prec)

    def truncate_abs(self, abs_prec: int) -> "PadicNumber":
        """Keep digits below ``p^abs_prec`` only."""
        if abs_prec >= self.abs_prec:
            return self
        if self.unit is None or abs_prec <= self.v:
            return PadicNumber(self.ctx, abs_prec, None, 0)
        return _make(self.ctx, self.v, self.unit, abs_prec - self.v)

    def lift(self, prec: int) -> "PadicNumber":
        """Treat the stored representative as exact and pad to ``prec`` digits."""
        if self.unit is None or prec <= self.prec:
            return self.truncate(prec)
        return PadicNumber(self.ctx, self.v, self.unit, prec)

    def unit_part(self) -> "PadicNumber":
        if self.unit is None:
            raise PrecisionError("zero has no unit part")
        return PadicNumber(self.ctx, 0, self.unit, self.prec)

    def coefficients(self) -> tuple[Fraction, ...]:
        """Rational coefficients of the stored representative in the basis 1, g, ..."""
        if self.unit is None:
            return (Fraction(0),) * self.ctx.f
        scale = Fraction(self.ctx.p) ** self.v
        return tuple(c * scale for c in self.unit)

    # -- coercion helpers
    def _coerce(self, other) -> "PadicNumber | None":
        if isinstance(other, PadicNumber):
            if other.ctx is not self.ctx and other.ctx.key != self.ctx.key:
                raise ValueError("values from incompatible fields")
            return other
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0:
                return None
            vq = vp_rational(q, self.ctx.p)
            prec = max(self.prec, self.abs_prec - vq, 1) + 1
            return from_rational(self.ctx, q, 1, prec)
        return NotImplemented

    # -- arithmetic
    def __neg__(self) -> "PadicNumber":
        if self.unit is None:
            return self
        M = self.ctx.p**self.prec
        return PadicNumber(self.ctx, self.v, tuple((-c) % M for c in self.unit), self.prec)

    def __pos__(self) -> "PadicNumber":
        return self

    def __add__(self, other) -> "PadicNumber":
        if isinstance(other, int) and not isinstance(other, bool):
            return self._add_int(other)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o is None:
            return self
        return _add(self, o)

    __radd__ = __add__

    def _add_int(self, j: int) -> "PadicNumber":
        if j == 0:
            return self
        ctx = self.ctx
        p = ctx.p
        A = self.abs_prec
        vj = 0
        jj = j
        while jj % p == 0:
            jj //= p
            vj += 1
        if self.unit is None:
            if vj >= A:
                return self
            return _make(ctx, vj, (jj,) + (0,) * (ctx.f - 1), A - vj)
        v = self.v
        if vj >= A:
            return self
        if vj > v:
            k = self.prec
            u = self.unit
            # adding a multiple of p keeps the residue, so still a unit
            c0 = (u[0] + jj * p ** (vj - v)) % p**k
            return PadicNumber(ctx, v, (c0,) + u[1:], k)
        # vj <= v
        k = A - vj
        M = p**k
        s = p ** (v - vj)
        coeffs = [c * s for c in self.unit]
        coeffs[0] += jj
        if v > vj:
            return PadicNumber(ctx, vj, tuple(c % M for c in coeffs), k)
        return _make(ctx, vj, coeffs, k)

    def __sub__(self, other) -> "PadicNumber":
        if isinstance(other, int) and not isinstance(other, bool):
            return self._add_int(-other)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o is None:
            return self
        return _add(self, -o)

    def __rsub__(self, other) -> "PadicNumber":
        return (-self) + other

    def __mul__(self, other) -> "PadicNumber":
        if isinstance(other, int) and not isinstance(other, bool) and other:
            p = self.ctx.p
            vj = 0
            while other % p == 0:
                other //= p
                vj += 1
            if self.unit is None:
                return PadicNumber(self.ctx, self.v + vj, None, 0)
            M = p**self.prec
            return PadicNumber(self.ctx, self.v + vj, tuple((c * other) % M for c in self.unit), self.prec)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o is None:
            return _exact_zero_times(self)
        return _mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "PadicNumber":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return _mul(self, o.inverse())

    def __rtruediv__(self, other) -> "PadicNumber":
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def inverse(self) -> "PadicNumber":
        if self.unit is None:
            raise ZeroDivisionError("division by a value indistinguishable from zero")
        return PadicNumber(self.ctx, -self.v, _pinv(self.unit, self.ctx, self.prec), self.prec)

    def __pow__(self, e: int) -> "PadicNumber":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return from_rational(self.ctx, 1, 1, max(self.prec, 1))
        if self.unit is None:
            return PadicNumber(self.ctx, self.v * e, None, 0)
        M = self.ctx.p**self.prec
        return PadicNumber(self.ctx, self.v * e, _ppow(self.unit, e, self.ctx, M), self.prec)


def _exact_zero_times(x: PadicNumber) -> PadicNumber:
    # 0 * x is exactly zero; report a generous finite precision
    return PadicNumber(x.ctx, max(x.abs_prec, 0) + x.ctx.rel_prec, None, 0)


def _add(a: PadicNumber, b: PadicNumber) -> PadicNumber:
    ctx = a.ctx
    A = min(a.abs_prec, b.abs_prec)
    if a.unit is None or b.unit is None:
        other = b if a.unit is None else a
        if other.unit is None:
            return PadicNumber(ctx, A, None, 0)
        return other.truncate_abs(A)
    va, vb = a.v, b.v
    v0 = va if va < vb else vb
    if A <= v0:
        return PadicNumber(ctx, A, None, 0)
    p = ctx.p
    k = A - v0
    M = p**k
    if va == vb:
        coeffs = tuple((x + y) % M for x, y in zip(a.unit, b.unit))
        return _make(ctx, v0, coeffs, k)
    if va < vb:
        s = p ** (vb - va)
        coeffs = tuple((x + y * s) % M for x, y in zip(a.unit, b.unit))
    else:
        s = p ** (va - vb)
        coeffs = tuple((x * s + y) % M for x, y in zip(a.unit, b.unit))
    # distinct valuations: leading unit survives
    return PadicNumber(ctx, v0, coeffs, k)


def _mul(a: PadicNumber, b: PadicNumber) -> PadicNumber:
    ctx = a.ctx
    if a.unit is None or b.unit is None:
        if a.unit is None and b.unit is None:
            return PadicNumber(ctx, a.v + b.v, None, 0)
        z, x = (a, b) if a.unit is None else (b, a)
        return PadicNumber(ctx, z.v + x.v, None, 0)
    k = a.prec if a.prec < b.prec else b.prec
    return PadicNumber(ctx, a.v + b.v, _pmul(a.unit, b.unit, ctx, ctx.p**k), k)


# ---------------------------------------------------------------------------
# constructors


def from_rational(ctx: PadicContext, a, b: int = 1, prec: int | None = None) -> PadicNumber:
    """The value a/b with ``prec`` relative digits (default: context precision)."""
    if b == 0:
        raise ZeroDivisionError("denominator is zero")
    q = Fraction(a) / Fraction(b)
    prec = ctx.rel_prec if prec is None else prec
    if q == 0:
        return PadicNumber(ctx, prec, None, 0)
    p = ctx.p
    num, den = q.numerator, q.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    M = p**prec
    c = num * pow(den, -1, M) % M
    return PadicNumber(ctx, v, (c,) + (0,) * (ctx.f - 1), prec)


def from_poly(ctx: PadicContext, coeffs: Sequence, prec: int | None = None) -> PadicNumber:
    """The value sum(c_i g^i) for rational c_i, normalized to (v, unit) form."""
    coeffs = [Fraction(c) for c in coeffs]
    if len(coeffs) > ctx.f:
        coeffs = _reduce_rational_poly(ctx, coeffs)
    coeffs += [Fraction(0)] * (ctx.f - len(coeffs))
    prec = ctx.rel_prec if prec is None else prec
    p = ctx.p
    vals = [vp_rational(c, p) for c in coeffs]
    nz = [x for x in vals if x is not None]
    if not nz:
        return PadicNumber(ctx, prec, None, 0)
    d = min(nz)
    M = p**prec
    unit = []
    for c in coeffs:
        c = c / Fraction(p) ** d
        unit.append(c.numerator * pow(c.denominator, -1, M) % M)
    return PadicNumber(ctx, d, tuple(unit), prec)


def _reduce_rational_poly(ctx: PadicContext, coeffs: list[Fraction]) -> list[Fraction]:
    """Exact reduction of a rational polynomial modulo the (monic) modulus."""
    c = list(coeffs)
    f = ctx.f
    for d in range(len(c) - 1, f - 1, -1):
        lead = c[d]
        if lead:
            for i in range(f):
                c[d - f + i] += lead * ctx._red[i]
        c[d] = Fraction(0)
    return c[:f]


# ---------------------------------------------------------------------------
# residue field


@dataclass(frozen=True)
class ResidueElement:
    """Element of F_{p^f} in the basis 1, ḡ, ..., ḡ^(f-1)."""

    ctx: PadicContext
    coeffs: tuple[int, ...]

    def __add__(self, other: "ResidueElement") -> "ResidueElement":
        p = self.ctx.p
        return ResidueElement(self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "ResidueElement") -> "ResidueElement":
        p = self.ctx.p
        return ResidueElement(self.ctx, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "ResidueElement") -> "ResidueElement":
        return ResidueElement(self.ctx, _pmul(self.coeffs, other.coeffs, self.ctx, self.ctx.p))

    def __pow__(self, e: int) -> "ResidueElement":
        return ResidueElement(self.ctx, _ppow(self.coeffs, e, self.ctx, self.ctx.p))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def frobenius(self) -> "ResidueElement":
        return self ** self.ctx.p

    def in_Fp(self) -> bool:
        return self.frobenius() == self


def valuation(x: PadicNumber) -> int:
    """v(x), or an :class:`AtLeast` bound for values that are zero to precision."""
    if x.unit is None:
        return AtLeast(x.v)
    return x.v


def chi(x: PadicNumber) -> int:
    """Indicator of |x| >= 1, i.e. 1 iff v(x) <= 0."""
    if x.unit is None:
        if x.v >= 1:
            return 0
        raise PrecisionError(f"chi undecidable: value is O(p^{x.v})")
    return 1 if x.v <= 0 else 0


def residue(x: PadicNumber) -> ResidueElement:
    ctx = x.ctx
    if x.unit is None:
        if x.v >= 1:
            return ResidueElement(ctx, (0,) * ctx.f)
        raise PrecisionError(f"residue undecidable: value is O(p^{x.v})")
    if x.v < 0:
        raise DomainError("residue of a non-integral value")
    if x.v > 0:
        return ResidueElement(ctx, (0,) * ctx.f)
    p = ctx.p
    return ResidueElement(ctx, tuple(c % p for c in x.unit))


def residue_in_Fp(x: PadicNumber) -> bool:
    return residue(x).in_Fp()


def ell(x: PadicNumber) -> int:
    """The integer in [1, p] congruent to x modulo the maximal ideal."""
    r = residue(x)
    if not r.in_Fp():
        raise DomainError("residue is not in F_p")
    return r.coeffs[0] or x.ctx.p


def dwork_shift(x: PadicNumber) -> PadicNumber:
    """x' = (x + p - ell(x)) / p, which is ceil(x/p) on Z_p."""
    p = x.ctx.p
    return (x + (p - ell(x))) / p


def teichmuller(x: PadicNumber) -> PadicNumber:
    """Root of unity congruent to the unit x modulo p, to x's precision."""
    if x.unit is None or x.v != 0:
        raise DomainError("Teichmüller lift needs a unit")
    ctx = x.ctx
    r = tuple(c % ctx.p for c in x.unit)
    return PadicNumber(ctx, 0, _teich_raw(ctx, r, x.prec), x.prec)


def in_Wp(x: PadicNumber) -> bool:
    """x in W_p: v(x) < 0, or integral with residue outside F_p."""
    if x.unit is None:
        if x.v >= 1:
            return False
        raise PrecisionError(f"W_p membership undecidable: value is O(p^{x.v})")
    if x.v < 0:
        return True
    return not residue_in_Fp(x)


def in_Zp_certified(x: PadicNumber) -> bool:
    """True when the value is integral and has no g-components."""
    if x.unit is None:
        return x.v >= 0
    return x.v >= 0 and not any(x.unit[1:])


def notin_Zp_certified(x: PadicNumber) -> bool:
    """True when the known digits prove x is not in Z_p."""
    if x.unit is None:
        return False
    return x.v < 0 or any(x.unit[1:])


# ---------------------------------------------------------------------------
# text form


def render(x: PadicNumber) -> str:
    """Canonical form ``p^v * (c0 + c1*g + ...)``; an ``O(p^A)`` suffix marks
    precision below the context default."""
    p = x.ctx.p
    if x.unit is None:
        return f"O({p}^{x.v})"
    terms = []
    for i, c in enumerate(x.unit):
        if i == 0:
            terms.append(str(c))
        elif i == 1:
            terms.append(f"{c}*g")
        else:
            terms.append(f"{c}*g^{i}")
    s = f"{p}^{x.v} * ({' + '.join(terms)})"
    if x.prec != x.ctx.rel_prec:
        s += f" + O({p}^{x.abs_prec})"
    return s


def digits(x: PadicNumber) -> list[tuple[int, tuple[int, ...]]]:
    """p-adic digit expansion: list of (exponent, digit coefficients)."""
    if x.unit is None:
        return []
    p = x.ctx.p
    out = []
    rest = list(x.unit)
    for k in range(x.prec):
        d = tuple(c % p for c in rest)
        rest = [(c - dc) // p for c, dc in zip(rest, d)]
        if any(d):
            out.append((x.v + k, d))
    return out


def render_digits(x: PadicNumber) -> str:
    p = x.ctx.p
    parts = []
    for e, d in digits(x):
        if x.ctx.f == 1:
            dig = str(d[0])
        else:
            dig = "(" + " + ".join(
                (str(c) if i == 0 else f"{c}*g" if i == 1 else f"{c}*g^{i}") for i, c in enumerate(d) if c
            ) + ")"
        parts.append(dig if e == 0 else f"{dig}*{p}^{e}")
    parts.append(f"O({p}^{x.abs_prec})")
    return " + ".join(parts)


def rational_reconstruct(c: int, M: int, slack: int = 1) -> Fraction | None:
    """Small a/b with a ≡ b*c (mod M), |a|, b <= sqrt(M/(2 slack^2)); None if none exists."""
    bound = isqrt(M // (2 * slack * slack))
    r0, r1 = M, c % M
    s0, s1 = 0, 1
    while r1 > bound:
        qq = r0 // r1
        r0, r1 = r1, r0 - qq * r1
        s0, s1 = s1, s0 - qq * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if gcd(abs(s1), M) != 1:
        return None
    return Fraction(r1, s1)


def rational_form(x: PadicNumber) -> str | None:
    """Human-readable rational guess such as ``g - 1/2``, if each coefficient
    of the value reconstructs to a small rational."""
    if x.unit is None:
        return "0"
    p = x.ctx.p
    M = p**x.prec
    coeffs = []
    for c in x.unit:
        # the slack keeps low-precision noise from passing as a rational
        q = rational_reconstruct(c, M, slack=p)
        if q is None:
            return None
        coeffs.append(q * Fraction(p) ** x.v)
    terms = []
    for i, q in enumerate(coeffs):
        if q == 0:
            continue
        mono = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
        if i == 0:
            body = str(abs(q))
        elif abs(q) == 1:
            body = mono
        else:
            body = f"{abs(q)}*{mono}"
        sign = "-" if q < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s


# ---------------------------------------------------------------------------
# exact rational helpers (Z_(p) inputs)


def ceil_p_rational(x: Fraction | int, p: int) -> Fraction:
    """Dwork shift of a rational with no p in its denominator."""
    x = Fraction(x)
    if x.denominator % p == 0:
        raise DomainError("not a p-adic integer")
    r = x.numerator * pow(x.denominator, -1, p) % p
    ell_x = r or p
    return (x + p - ell_x) / p
