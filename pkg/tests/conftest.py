import os
import sys

import pytest

from minorposet.corpus import corpus

SPECS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "specs")


@pytest.fixture(scope="session")
def hosts():
    return corpus()


@pytest.fixture
def spec_path():
    return lambda name: os.path.join(SPECS, name + ".json")


ACCEPTANCE = []


def record(number, ok, detail=""):
    """Log one acceptance criterion; the lines are echoed in the terminal summary."""
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
    ACCEPTANCE.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
