from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from padic_lgamma import ctx_new

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

PRIMES = (2, 3, 5, 7)


def small_fractions(max_num=200, max_den=50):
    return st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )


def nonzero_fractions(max_num=200, max_den=50):
    return small_fractions(max_num, max_den).filter(lambda q: q != 0)


@st.composite
def padic_values(draw, ctx, vmin=-3, vmax=3, full_prec=False):
    """Nonzero values with random valuation, unit digits and relative precision."""
    p, R = ctx.p, ctx.rel_prec
    M = p**R
    while True:
        coeffs = [draw(st.integers(0, M - 1)) for _ in range(ctx.f)]
        if any(c % p for c in coeffs):
            break
        coeffs[0] += 1
        if any(c % p for c in coeffs):
            break
    v = draw(st.integers(vmin, vmax))
    x = ctx(coeffs) * Fraction(p) ** v
    if not full_prec:
        x = x.truncate(draw(st.integers(max(1, R - 6), R)))
    return x


@pytest.fixture(scope="session")
def contexts():
    return {(p, f): ctx_new(p, f, 30) for p in (2, 3, 5) for f in (1, 2)}


# one verdict line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
