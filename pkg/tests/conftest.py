from __future__ import annotations

import pytest

from ehrgraph import families
from helpers import ACCEPTANCE_LINES


@pytest.fixture
def dumbbell():
    return families.dumbbell()


@pytest.fixture
def star():
    return families.star()


@pytest.fixture
def single_edge():
    return families.single_edge()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
