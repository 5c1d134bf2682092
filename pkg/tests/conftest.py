import sys

import pytest
from hypothesis import HealthCheck, settings

from otlck.exactnum import RationalPolynomial
from otlck.numfield import make_field

settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


CUBIC = [-1, -1, 0, 1]  # x^3 - x - 1
QUARTIC = [-1, -1, 0, 0, 1]  # x^4 - x - 1
QUINTIC = [-1, -1, 0, 0, 0, 1]  # x^5 - x - 1
SEXTIC = [-1, 0, -1, 0, 0, 0, 1]  # x^6 - x^2 - 1, signature (2, 2)
OCTIC = [-1, -1, 0, 0, 0, 0, 0, 0, 1]  # x^8 - x - 1, signature (2, 3)
SQRT2 = [-2, 0, 1]
SQRT3 = [-3, 0, 1]
GAUSS = [1, 0, 1]


def P(cs):
    return RationalPolynomial(cs)


@pytest.fixture(scope="session")
def cubic():
    return make_field(P(CUBIC))


@pytest.fixture(scope="session")
def quartic():
    return make_field(P(QUARTIC))


@pytest.fixture(scope="session")
def quintic():
    return make_field(P(QUINTIC))


@pytest.fixture(scope="session")
def sextic():
    return make_field(P(SEXTIC))


@pytest.fixture(scope="session")
def octic():
    return make_field(P(OCTIC))


@pytest.fixture(scope="session")
def sqrt2():
    return make_field(P(SQRT2))


@pytest.fixture(scope="session")
def sqrt3():
    return make_field(P(SQRT3))


@pytest.fixture(scope="session")
def gauss():
    return make_field(P(GAUSS))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "CRITERIA_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
