import warnings

import pytest
from numba import NumbaWarning

warnings.filterwarnings("ignore", message="The TBB threading layer", category=NumbaWarning)

from helpers import L_POINTS, Z_POINTS  # noqa: E402
from progsimp.geometry import Curve  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture
def Z():
    return Curve(Z_POINTS)


@pytest.fixture
def L():
    return Curve(L_POINTS)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
