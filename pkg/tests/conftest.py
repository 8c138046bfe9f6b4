import numpy as np
import pytest

from bipedgait import GaitParams, RobotGeometry, plan_walk

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def geom():
    return RobotGeometry()


@pytest.fixture(scope="session")
def walk2(geom):
    return plan_walk(GaitParams(n_steps=2), geom)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
