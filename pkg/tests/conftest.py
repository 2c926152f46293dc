import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile("stress", max_examples=1000, deadline=None)
settings.load_profile("default")


def np_mat(M):
    """numpy copy of a UnitMatrix, for oracle computations."""
    return np.array([[M.a, M.b], [M.c, M.d]], dtype=complex)


def np_jorgensen(A, B):
    """Jorgensen number recomputed from scratch with numpy."""
    a, b = np.asarray(A, dtype=complex), np.asarray(B, dtype=complex)
    comm = a @ b @ np.linalg.inv(a) @ np.linalg.inv(b)
    return abs(np.trace(a) ** 2 - 4) + abs(np.trace(comm) - 2)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
