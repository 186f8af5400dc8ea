from fractions import Fraction
from math import ceil

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padic_lgamma import (
    AtLeast,
    DomainError,
    PrecisionError,
    chi,
    ctx_new,
    dwork_shift,
    ell,
    from_poly,
    from_rational,
    in_Wp,
    residue,
    residue_in_Fp,
    teichmuller,
    valuation,
)
from padic_lgamma.core import (
    ceil_p_rational,
    default_modulus,
    in_Zp_certified,
    is_irreducible_mod_p,
    notin_Zp_certified,
    rational_form,
)

from .conftest import nonzero_fractions, padic_values

Q3 = ctx_new(3, 1, 20)
Q5 = ctx_new(5, 1, 20)
K5 = ctx_new(5, 2, 20)
K2 = ctx_new(2, 2, 20)
K3 = ctx_new(3, 2, 20)


def agree(a, b):
    """Equal as p-adic values up to the smaller absolute precision."""
    return valuation(a - b) >= min(a.abs_prec, b.abs_prec)


# ---------------------------------------------------------------------------
# contexts


def test_base_field_context():
    ctx = ctx_new(2, 1, 32)
    assert ctx.f == 1 and ctx.modulus == (0, 1) and ctx.rel_prec == 32


def test_default_quadratic_modulus_p5():
    assert ctx_new(5, 2, 20).modulus == (-2, 0, 1)


def test_default_modulus_p2():
    assert ctx_new(2, 2).modulus == (1, 1, 1)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
@pytest.mark.parametrize("f", [2, 3, 4])
def test_default_moduli_irreducible(p, f):
    mod = default_modulus(p, f)
    assert len(mod) == f + 1 and mod[-1] == 1
    assert is_irreducible_mod_p(mod, p)


def test_composite_prime_rejected():
    with pytest.raises(ValueError):
        ctx_new(4, 1, 10)


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        ctx_new(5, 2, 10, modulus=(1, 0, 1))  # g^2 + 1 = (g - 2)(g + 2) mod 5


# ---------------------------------------------------------------------------
# construction


def test_from_rational_examples():
    x = from_rational(Q3, 7)
    assert x.v == 0 and x.unit[0] % 3**20 == 7
    y = from_rational(Q3, 9, 2)
    assert y.v == 2 and (y.unit[0] * 2) % 3**20 == 1
    z = from_rational(Q3, 1, 3)
    assert z.v == -1 and z.unit == (1,)


def test_from_rational_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        from_rational(Q3, 1, 0)


def test_from_poly_examples():
    x = from_poly(K5, [3, 1])
    assert x.v == 0 and x.unit == (3, 1)
    y = from_poly(K5, [0, 5])
    assert y.v == 1 and y.unit == (0, 1)
    z = from_poly(K5, [Fraction(1, 5), 0])
    assert z.v == -1


# ---------------------------------------------------------------------------
# arithmetic


def test_arith_examples():
    s = Q3(1, 3) + Q3(2, 3)
    assert s.v == 0 and agree(s, Q3(1))
    assert from_poly(K5, [2, 5]) * 3 == from_poly(K5, [6, 15])
    x = Q3(5, 9)
    d = x - x
    assert d.unit is None and d.v == x.v + Q3.rel_prec


def test_division_by_indistinguishable_zero():
    with pytest.raises(ZeroDivisionError):
        Q3(1) / Q3.zero(5)


@pytest.mark.parametrize("key", [(3, 1), (5, 2), (2, 2)])
@given(data=st.data())
def test_ring_laws(contexts, key, data):
    ctx = contexts[key]
    a, b, c = (data.draw(padic_values(ctx)) for _ in range(3))
    for lhs, rhs in [
        ((a + b) + c, a + (b + c)),
        ((a * b) * c, a * (b * c)),
        (a * (b + c), a * b + a * c),
        (a + b, b + a),
        (a * b, b * a),
    ]:
        A = min(lhs.abs_prec, rhs.abs_prec)
        assert valuation(lhs - rhs) >= A


@pytest.mark.parametrize("key", [(3, 1), (5, 2), (2, 1)])
@given(data=st.data())
def test_inverse_and_division(contexts, key, data):
    ctx = contexts[key]
    a = data.draw(padic_values(ctx))
    b = data.draw(padic_values(ctx))
    q = a / b
    assert valuation(q * b - a) >= min(q.abs_prec + b.v, a.abs_prec)
    assert q.v == a.v - b.v


@pytest.mark.parametrize("key", [(3, 1), (5, 2), (2, 2)])
@given(data=st.data())
def test_valuation_laws(contexts, key, data):
    ctx = contexts[key]
    a = data.draw(padic_values(ctx))
    b = data.draw(padic_values(ctx))
    assert valuation(a * b) == valuation(a) + valuation(b)
    s = a + b
    assert valuation(s) >= min(valuation(a), valuation(b))
    if valuation(a) != valuation(b):
        assert valuation(s) == min(valuation(a), valuation(b))


@given(q=nonzero_fractions(), r=nonzero_fractions())
def test_exact_rationals_embed_homomorphically(q, r):
    assert agree(Q5(q) + Q5(r), Q5(q + r))
    assert Q5(q) * Q5(r) == Q5(q * r)


def test_valuation_examples():
    assert valuation(Q3(9, 2)) == 2
    assert valuation(K5.gen()) == 0
    assert valuation(Q5(1, 25)) == -2
    v = valuation(Q3.zero(7))
    assert isinstance(v, AtLeast) and v == 7


def test_precision_propagation():
    a = Q3(1).truncate(5)
    b = Q3(1, 3)
    assert (a * b).prec == 5
    assert (a + b).abs_prec == a.abs_prec
    # cancellation lowers surviving relative digits
    c = Q3(1) + Q3(3**4)
    d = (c - Q3(1)).truncate_abs(6)
    assert d.v == 4 and d.prec == 2


# ---------------------------------------------------------------------------
# chi, residue, ell, dwork


def test_chi_examples():
    assert chi(Q3(3)) == 0
    assert chi(Q3(1, 3)) == 1
    assert chi(from_poly(K5, [3, 1])) == 1


def test_chi_indeterminate():
    with pytest.raises(PrecisionError):
        chi(Q3.zero(0))
    assert chi(Q3.zero(1)) == 0


@pytest.mark.parametrize("key", [(3, 1), (5, 2), (2, 1)])
@given(data=st.data())
def test_chi_locally_constant(contexts, key, data):
    ctx = contexts[key]
    y = data.draw(padic_values(ctx))
    z = data.draw(padic_values(ctx, vmin=1, vmax=4))
    assert chi(y + z) == chi(y)


def test_residue_examples():
    r = residue(Q5(7))
    assert r.coeffs == (2,) and r.in_Fp()
    assert residue_in_Fp(Q5(7))
    assert not residue(K5.gen()).in_Fp()
    with pytest.raises(DomainError):
        residue(Q5(1, 5))


def test_residue_frobenius():
    r = residue(from_poly(K5, [3, 2]))
    assert r.frobenius().frobenius() == r
    assert r.frobenius() != r


def test_ell_examples():
    assert ell(Q5(7)) == 2
    assert ell(Q5(10)) == 5
    assert ell(Q3(1, 2)) == 2
    with pytest.raises(DomainError):
        ell(K5.gen())


def test_dwork_examples():
    # dividing by p costs one digit of absolute precision
    assert agree(dwork_shift(Q3(5)), Q3(2))
    assert agree(dwork_shift(Q3(-1)), Q3(0))
    assert agree(dwork_shift(Q3(1, 2)), Q3(1, 2))
    assert dwork_shift(Q3(5)).abs_prec == Q3(5).abs_prec - 1


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_dwork_is_ceiling_on_naturals(p):
    ctx = ctx_new(p, 1, 12)
    for a in range(0, 10**4 + 1):
        assert agree(dwork_shift(ctx(a)), ctx(-(-a // p))), a


@given(q=nonzero_fractions())
def test_dwork_rational_matches_padic(q):
    if q.denominator % 3 == 0:
        return
    assert agree(dwork_shift(Q3(q)), Q3(ceil_p_rational(q, 3)))
    if q.denominator == 1:
        assert ceil_p_rational(q, 3) == ceil(Fraction(q, 3))


# ---------------------------------------------------------------------------
# Teichmüller


def test_teichmuller_examples():
    assert teichmuller(Q5(1)) == Q5(1)
    w = teichmuller(Q5(2))
    assert w.unit[0] % 25 == 7
    wg = teichmuller(K5.gen())
    assert valuation(wg**25 - wg) >= wg.abs_prec


@pytest.mark.parametrize("key", [(3, 1), (5, 2), (2, 2), (2, 1)])
@given(data=st.data())
def test_teichmuller_properties(contexts, key, data):
    ctx = contexts[key]
    x = data.draw(padic_values(ctx, vmin=0, vmax=0, full_prec=True))
    w = teichmuller(x)
    assert valuation(w ** (ctx.p**ctx.f) - w) >= w.abs_prec
    assert valuation(w - x) >= 1


def test_teichmuller_needs_unit():
    with pytest.raises(DomainError):
        teichmuller(Q5(5))


# ---------------------------------------------------------------------------
# W_p and Z_p certification


def test_in_wp_examples():
    assert in_Wp(Q5(1, 5))
    assert in_Wp(K5.gen())
    assert not in_Wp(Q5(7))


def test_in_wp_indeterminate():
    with pytest.raises(PrecisionError):
        in_Wp(Q5.zero(-1))


@pytest.mark.parametrize("key", [(3, 2), (5, 2), (2, 2), (3, 1)])
@given(data=st.data(), t=st.integers(-100, 100))
def test_wp_translation_invariant(contexts, key, data, t):
    x = data.draw(padic_values(contexts[key]))
    if in_Wp(x):
        assert in_Wp(x + t)


def test_zp_certification():
    assert in_Zp_certified(Q3(5, 2))
    assert not in_Zp_certified(Q3(1, 3))
    assert in_Zp_certified(from_poly(K3, [2, 0]))
    assert notin_Zp_certified(K3.gen())
    assert notin_Zp_certified(Q3(1, 3))
    assert not notin_Zp_certified(Q3(2))


# ---------------------------------------------------------------------------
# text form


def test_rational_form():
    assert rational_form(K5.gen() - Fraction(1, 2)) == "-1/2 + g"
    assert rational_form(Q3(7, 4)) == "7/4"
    assert rational_form(Q3.zero(5)) == "0"
