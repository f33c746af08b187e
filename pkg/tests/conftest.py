import random

import pytest


def rel(x, y) -> float:
    x, y = complex(x), complex(y)
    return abs(x - y) / abs(y) if y else abs(x - y)


@pytest.fixture
def rng():
    return random.Random(20261018)


ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: int(k[2:])):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
