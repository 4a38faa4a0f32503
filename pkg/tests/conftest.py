import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from ktrace.corealg import LaurentPoly

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
exps = st.integers(min_value=-3, max_value=3)


@st.composite
def laurent(draw, names=("z1", "z2", "w1"), max_terms=5):
    """Random Laurent polynomial in a few registry variables."""
    out = LaurentPoly()
    for _ in range(draw(st.integers(0, max_terms))):
        mono = {n: draw(exps) for n in names}
        out = out + LaurentPoly.monomial(mono, draw(small_fracs))
    return out


@st.composite
def partitions(draw, max_size=6):
    n = draw(st.integers(0, max_size))
    parts = []
    while n:
        k = draw(st.integers(1, n))
        parts.append(k)
        n -= k
    return tuple(sorted(parts, reverse=True))


ACCEPTANCE_LINES = []


@pytest.fixture
def record_line():
    return ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
