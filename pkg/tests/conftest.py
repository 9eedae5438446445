import numpy as np
import pytest
from scipy.integrate import quad

from entprod import scenarios as S

ACCEPTANCE_LINES = []


def line_integral(phi, speed):
    """int phi(t, speed t) dt by scipy's adaptive rule."""
    lo, hi = phi.support.t
    return quad(lambda t: float(phi.value(t, speed * t)), lo, hi, epsabs=1e-14, epsrel=1e-13, limit=400)[0]


@pytest.fixture(scope="session")
def shock():
    return S.burgers_shock()


@pytest.fixture(scope="session")
def rarefaction():
    return S.burgers_rarefaction()


@pytest.fixture(scope="session")
def nonentropic():
    return S.nonentropic_shock()


@pytest.fixture(scope="session")
def x2u():
    return S.paper_x2u_strong()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
