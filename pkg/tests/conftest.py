from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from mcgrep.exact import Matrix, Scalar

settings.register_profile(
    "exact",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")

small_fractions = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@st.composite
def scalars(draw, gaussian=True, nonzero=False):
    re = draw(small_fractions)
    im = draw(small_fractions) if gaussian else Fraction(0)
    z = Scalar(re, im)
    if nonzero and not z:
        z = Scalar(1, im)
    return z


@st.composite
def matrices(draw, n, gaussian=False):
    return Matrix.from_rows([[draw(scalars(gaussian=gaussian)) for _ in range(n)] for _ in range(n)])


# acceptance results collected by tests/test_acceptance.py
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_lines():
    return ACCEPTANCE_LINES
