import numpy as np
import pytest
from hypothesis import strategies as st

ACCEPTANCE_LINES = []


def record(line: str) -> None:
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


finite = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)


@st.composite
def states(draw, k=2):
    """Normalized complex vectors of dimension k (rejecting near-zero draws)."""
    re = draw(st.lists(finite, min_size=k, max_size=k))
    im = draw(st.lists(finite, min_size=k, max_size=k))
    z = np.array(re) + 1j * np.array(im)
    n = np.linalg.norm(z)
    if n < 1e-3:
        z = np.zeros(k, complex)
        z[0] = 1.0
        return z
    return z / n


angles = st.floats(min_value=-2 * np.pi, max_value=2 * np.pi, allow_nan=False, allow_infinity=False)
