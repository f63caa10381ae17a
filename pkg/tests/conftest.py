import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

_ACCEPTANCE: dict = {}


def brute_phi(a) -> tuple[int, int]:
    """(alpha', Phi) by listing every partial injection X -> Y; tiny graphs only."""
    a = np.asarray(a)
    nx, ny = a.shape
    for s in range(min(nx, ny), 0, -1):
        total = 0
        for rows in itertools.combinations(range(nx), s):
            for cols in itertools.permutations(range(ny), s):
                p = 1
                for i, j in zip(rows, cols):
                    p *= int(a[i, j])
                    if not p:
                        break
                total += p
        if total:
            return s, total
    return 0, 1


@st.composite
def matrices(draw, max_nx=4, max_ny=4, max_mult=3, min_nx=1, min_ny=1):
    nx = draw(st.integers(min_nx, max_nx))
    ny = draw(st.integers(min_ny, max_ny))
    cells = draw(st.lists(st.integers(0, max_mult), min_size=nx * ny, max_size=nx * ny))
    return np.array(cells, dtype=np.int64).reshape(nx, ny)


@st.composite
def square_with_pm(draw, max_n=5, max_mult=2):
    """Square matrices with a positive diagonal, so a perfect matching exists."""
    n = draw(st.integers(1, max_n))
    cells = draw(st.lists(st.integers(0, max_mult), min_size=n * n, max_size=n * n))
    a = np.array(cells, dtype=np.int64).reshape(n, n)
    np.fill_diagonal(a, np.maximum(np.diag(a), 1))
    return a


@pytest.fixture
def acceptance():
    """Record the outcome of one acceptance criterion for the summary."""

    def record(number: int, passed: bool, detail: str) -> None:
        _ACCEPTANCE[number] = (passed, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        passed, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}")
