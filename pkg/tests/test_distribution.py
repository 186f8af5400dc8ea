from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padic_lgamma import (
    IDENTITIES,
    ConvergencePolicy,
    DomainError,
    build_sequence,
    check_identity,
    ctx_new,
    dist_lhs,
    dist_rhs,
    ell,
    factor_n,
    in_Wp,
    rational_form,
    valuation,
)
from padic_lgamma.distribution import (
    LEFT_FP,
    LEFT_RING,
    R_EXHAUSTED,
    _log_n,
    rp_matches_dwork,
    specialization_matches,
)
from padic_lgamma.plan import sample_points

POL = {p: ConvergencePolicy.default(p) for p in (2, 3, 5)}
SCHEMA = {"identity", "inputs", "lhs", "rhs", "residual_valuation", "target", "pass", "trace"}


def ctx(p, f=1):
    return ctx_new(p, f, 40)


def agree(a, b):
    return valuation(a - b) >= min(a.abs_prec, b.abs_prec)


# ---------------------------------------------------------------------------
# factor_n


def test_factor_n_examples():
    assert factor_n(2, 12) == (3, 2)
    assert factor_n(3, 7) == (7, 0)
    assert factor_n(5, 25) == (1, 2)
    assert factor_n(ctx(3), 18) == (2, 2)
    with pytest.raises(ValueError):
        factor_n(3, 0)


@given(p=st.sampled_from([2, 3, 5, 7]), n=st.integers(1, 10**6))
def test_factor_n_property(p, n):
    m, r = factor_n(p, n)
    assert m * p**r == n and m % p


# ---------------------------------------------------------------------------
# shift sequences


def _forms(seq):
    return [rational_form(x) for x in seq.x_list]


def test_sequence_examples():
    s = build_sequence(ctx(2)(1), 4)
    assert _forms(s) == ["1", "1", "1"] and s.omega == 2 and s.stop_reason == R_EXHAUSTED
    assert s.render() == "[1, 1, 1] ω=2 (r-exhausted)"
    k3 = ctx(3, 2)
    s = build_sequence(k3.gen(), 9)
    assert _forms(s) == ["g"] and s.omega == 0 and s.stop_reason == LEFT_FP
    assert s.render() == "[g] ω=0 (residue-left-Fp)"
    s = build_sequence(ctx(3)(1, 3), 3)
    assert _forms(s) == ["1/3"] and s.omega == 0 and s.stop_reason == LEFT_RING
    s = build_sequence(ctx(5)(2), 7)
    assert _forms(s) == ["2"] and s.omega == 0 and s.stop_reason == R_EXHAUSTED


def _value_strategy():
    @st.composite
    def draw(draw_):
        p = draw_(st.sampled_from([2, 3, 5]))
        f = draw_(st.sampled_from([1, 2]))
        c = ctx_new(p, f, 24)
        coeffs = [
            Fraction(draw_(st.integers(-300, 300)), draw_(st.integers(1, 40))) for _ in range(f)
        ]
        n = draw_(st.sampled_from([1, 2, 3, 4, 5, 6, 8, 9, 12, 16, 25, 27]))
        return c, coeffs, n

    return draw()


@settings(max_examples=500)
@given(data=_value_strategy())
def test_sequence_invariants(data):
    c, coeffs, n = data
    x = c(coeffs)
    if x.unit is None:
        return
    p = c.p
    seq = build_sequence(x, n)
    m, r = factor_n(p, n)
    assert (seq.m, seq.r) == (m, r)
    assert len(seq.x_list) == seq.omega + 1 <= r + 1
    assert len(seq.ell_list) == seq.omega
    for j, (xj, lj) in enumerate(zip(seq.x_list, seq.ell_list)):
        # every continued step starts outside W_p with a residue in F_p
        assert not in_Wp(xj)
        assert ell(xj) == lj and 1 <= lj <= p
        assert agree(seq.x_list[j + 1] * p, xj + (p - lj))
    last = seq.x_list[-1]
    if seq.stop_reason == R_EXHAUSTED:
        assert seq.omega == r
    elif seq.stop_reason == LEFT_RING:
        assert last.v < 0
    else:
        assert seq.stop_reason == LEFT_FP and last.v >= 0 and in_Wp(last)
    assert build_sequence(x, n) == seq


# ---------------------------------------------------------------------------
# log_p(n) normalisation


@pytest.mark.parametrize("p", [2, 3, 5])
def test_log_n_equals_log_m(p):
    c = ctx(p)
    pol = POL[p]
    for n in (2, 3, 4, 6, 8, 9, 10, 12, 25, 27):
        m, _ = factor_n(p, n)
        assert agree(_log_n(c, n, pol), _log_n(c, m, pol))


# ---------------------------------------------------------------------------
# distribution sides


def test_worked_distribution_both_sides_vanish():
    c = ctx(2)
    lhs, rhs = dist_lhs(c(1), 4, POL[2]), dist_rhs(c(1), 4, POL[2])
    assert valuation(lhs) >= 5 and valuation(rhs) >= 5


def test_distribution_over_extension_point():
    k3 = ctx(3, 2)
    r = check_identity("distribution", k3.gen(), 9, N=4)
    assert r.passed and r.residual_valuation >= 4
    # m = 1 so log_3(9) vanishes and rhs is lp(g)
    assert valuation(_log_n(k3, 9, POL[3])) >= 8


@pytest.mark.parametrize("p", [2, 3])
def test_distribution_on_samples(p):
    for f, regime in [(1, "negative"), (1, "unit"), (1, "pZp"), (2, "ext_unit"), (2, "ext_fp")]:
        c = ctx(p, f)
        for pt in sample_points(p, regime, 1, seed=3):
            for n in (2, 4, 6):
                r = check_identity("distribution", pt.value(c), n, N=4)
                assert r.passed, r.line()


# ---------------------------------------------------------------------------
# catalogue examples


def test_reflection_example():
    r = check_identity("reflection", ctx(2)(1, 3), N=5)
    assert r.passed and r.residual_valuation >= 5


def test_restricted_dist_example():
    r = check_identity("restricted_dist", ctx(5)(2), 10, N=4)
    assert r.passed and r.residual_valuation >= 4


@pytest.mark.parametrize(
    "identity,x,n",
    [
        ("difference", Fraction(2, 7), None),
        ("rp_agreement", Fraction(1, 3), None),
        ("m_lemma", Fraction(5, 2), 2),
        ("morita_dist", Fraction(4), 2),
        ("diamond_dist", Fraction(1, 3), 2),
        ("morita_series", Fraction(9), None),
        ("gamma_consistency", Fraction(1), 7),
        ("wp_agreement", Fraction(-2, 3), None),
        ("raabe", Fraction(1, 5), None),
    ],
)
def test_catalogue_passes_at_p3(identity, x, n):
    N = 3 if identity == "raabe" else 5
    r = check_identity(identity, ctx(3)(x), n, N=N)
    assert r.passed, r.line()


def test_catalogue_is_complete():
    assert set(IDENTITIES) == {
        "difference",
        "reflection",
        "raabe",
        "rp_agreement",
        "distribution",
        "m_lemma",
        "morita_dist",
        "diamond_dist",
        "restricted_dist",
        "morita_series",
        "gamma_consistency",
        "wp_agreement",
    }


def test_regime_mismatch_rejected():
    c3 = ctx(3)
    with pytest.raises(DomainError):
        check_identity("morita_dist", c3(1, 3), 2)
    with pytest.raises(DomainError):
        check_identity("morita_dist", c3(2), 3)
    with pytest.raises(DomainError):
        check_identity("restricted_dist", c3(2), 2)
    with pytest.raises(DomainError):
        check_identity("diamond_dist", c3(2), 2)
    with pytest.raises(DomainError):
        check_identity("m_lemma", c3(2), 3)
    with pytest.raises(DomainError):
        check_identity("distribution", c3(2))
    with pytest.raises(DomainError):
        check_identity("wp_agreement", c3(2))
    with pytest.raises(KeyError):
        check_identity("nonsense", c3(2))


# ---------------------------------------------------------------------------
# specialisations


@pytest.mark.parametrize("p", [2, 3])
def test_specializations_match_general_rhs(p):
    c = ctx(p)
    k = ctx(p, 2)
    cases = [(c(Fraction(a, 7)), n) for a in (1, 2, 5) for n in (3, 5) if n % p]
    cases += [(c(Fraction(1, p)), 4), (c(Fraction(3, p)), 6), (k.gen(), 2), (k.gen() + 1, 3)]
    for x, n in cases:
        if build_sequence(x, n).omega != 0:
            continue
        assert specialization_matches(x, n, POL[p])


def test_specialization_rejects_long_sequences():
    with pytest.raises(DomainError):
        specialization_matches(ctx(2)(1), 4, POL[2])


@given(q=st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000))
def test_rp_matches_dwork_on_rationals(q):
    for p in (2, 3, 5):
        if q.denominator % p:
            assert rp_matches_dwork(q, p)


# ---------------------------------------------------------------------------
# reports


def test_report_pass_rule_and_schema():
    r = check_identity("reflection", ctx(3)(2, 5), N=5)
    assert r.passed == (r.residual_valuation >= min(r.target, r.lhs.abs_prec, r.rhs.abs_prec))
    j = r.to_json()
    assert set(j) == SCHEMA
    assert j["inputs"]["p"] == 3 and j["inputs"]["x"] == "2/5"
    assert r.line().startswith("[PASS] reflection(")


def test_report_fails_when_residual_low():
    r = check_identity("reflection", ctx(3)(2, 5), N=5)
    r2 = type(r)(r.identity, r.inputs, r.lhs, r.lhs + 1, 0, 5, False)
    assert r2.line().startswith("[FAIL]")


def test_checks_are_deterministic():
    a = check_identity("distribution", ctx(2)(3, 5), 6, N=4)
    b = check_identity("distribution", ctx(2)(3, 5), 6, N=4)
    assert a.to_json() == b.to_json()
