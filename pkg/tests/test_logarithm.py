from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padic_lgamma import PrecisionError, ctx_new, log_p, teichmuller, valuation
from padic_lgamma.logarithm import log_int, series_terms

from .conftest import padic_values


def agree(a, b):
    return valuation(a - b) >= min(a.abs_prec, b.abs_prec)


def test_log_p_of_p_is_zero():
    for p in (2, 3, 5, 7):
        ctx = ctx_new(p, 1, 20)
        z = log_p(ctx(p))
        assert z.unit is None and z.v >= 8


def test_log_minus_one_is_zero():
    for p in (2, 3, 5):
        z = log_p(ctx_new(p, 1, 20)(-1))
        assert z.unit is None and z.v >= 8


def _series_oracle(z: Fraction, p: int, target: int) -> Fraction:
    """Partial sum of log(1+z) with every omitted term of valuation >= target."""
    vz = 0
    num = z.numerator
    while num % p == 0:
        num //= p
        vz += 1
    K = series_terms(vz, target, p)
    return sum(Fraction((-1) ** (k + 1)) * z**k / k for k in range(1, K + 1))


def test_log3_of_4_matches_series():
    ctx = ctx_new(3, 1, 20)
    got = log_p(ctx(4))
    want = ctx(_series_oracle(Fraction(3), 3, 20))
    assert valuation(got - want) >= got.abs_prec
    assert got.abs_prec == 20


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_series_oracle_agrees_for_units_one_mod_p(p):
    ctx = ctx_new(p, 1, 16)
    for a in range(1, 30):
        u = 1 + p * a if p > 2 else 1 + 4 * a
        got = log_p(ctx(u))
        want = ctx(_series_oracle(Fraction(u - 1), p, 16))
        assert valuation(got - want) >= min(got.abs_prec, 16)


@pytest.mark.parametrize("p,f", [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (5, 2)])
@given(data=st.data())
def test_homomorphism(p, f, data):
    ctx = ctx_new(p, f, 20)
    x = data.draw(padic_values(ctx))
    y = data.draw(padic_values(ctx))
    lx, ly, lxy = log_p(x), log_p(y), log_p(x * y)
    A = min(lx.abs_prec, ly.abs_prec, lxy.abs_prec)
    assert valuation(lxy - lx - ly) >= A
    if min(x.prec, y.prec) == 20:
        assert A >= 8


@pytest.mark.parametrize("p,f", [(2, 1), (3, 1), (5, 2), (2, 2)])
@given(data=st.data())
def test_log_of_teichmuller_vanishes(p, f, data):
    ctx = ctx_new(p, f, 20)
    x = data.draw(padic_values(ctx, vmin=0, vmax=0, full_prec=True))
    z = log_p(teichmuller(x))
    assert z.unit is None and z.v >= 8


@pytest.mark.parametrize("p,f", [(2, 1), (3, 2), (5, 1)])
@given(data=st.data(), k=st.integers(-5, 5))
def test_log_ignores_powers_of_p(p, f, data, k):
    ctx = ctx_new(p, f, 20)
    x = data.draw(padic_values(ctx))
    assert agree(log_p(x * Fraction(p) ** k), log_p(x))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_truncation_against_extra_precision(p):
    lo, hi = ctx_new(p, 2, 12), ctx_new(p, 2, 24)
    for a, b in [(1, 1), (2, 3), (7, 5), (-4, 9)]:
        x_lo, x_hi = lo([a, b]), hi([a, b])
        got, ref = log_p(x_lo), log_p(x_hi)
        assert got.abs_prec == 12
        assert valuation(got.lift(24) - ref) >= 12


def test_series_term_bound():
    for p in (2, 3, 5):
        for vz in (1, 2, 3):
            for target in (5, 10, 20):
                K = series_terms(vz, target, p)
                for k in range(K + 1, K + 200):
                    lg = 0
                    t = k
                    while t >= p:
                        t //= p
                        lg += 1
                    assert k * vz - lg >= target


def test_log_of_zero_rejected():
    ctx = ctx_new(3, 1, 10)
    with pytest.raises(PrecisionError):
        log_p(ctx.zero(4))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_log_n_equals_log_m(p):
    ctx = ctx_new(p, 1, 20)
    for m in (1, 2, 3, 4, 6, 7, 11):
        if m % p == 0:
            continue
        for r in (1, 2, 3):
            assert agree(log_int(ctx, m * p**r), log_int(ctx, m))
