import numpy as np
import pytest

from benford_walk import GeneratorSpec


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


def spec(family, base=10, **params):
    return GeneratorSpec(family, params, base)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
