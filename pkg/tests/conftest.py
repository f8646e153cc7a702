"""Shared fixtures and the acceptance summary printed at the end of a run."""

import pytest

from toroidal_va import RingSpec
from toroidal_va.lie import abelian, preset

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def sl2():
    return preset("sl2")


@pytest.fixture(scope="session")
def sl3():
    return preset("sl3")


@pytest.fixture(scope="session")
def ab1():
    return abelian(1)


@pytest.fixture(scope="session")
def Rt():
    return RingSpec.parse("laurent:t;t=t")


@pytest.fixture(scope="session")
def Rxt():
    return RingSpec.parse("laurent:x,t;t=t")


@pytest.fixture(scope="session")
def Ryt():
    return RingSpec.parse("laurent:y,t;t=t")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
