import pytest

from pgsas.sut import SutConfig

# Five on/off parameters; 0 = On / Active, 1 = Off / Inactive.
SURVEILLANCE_SUITE = [
    [0, 0, 0, 0, 0],
    [0, 1, 1, 1, 1],
    [1, 0, 0, 0, 1],
    [1, 1, 1, 1, 0],
    [0, 0, 1, 0, 0],
    [1, 1, 0, 0, 1],
    [0, 0, 0, 1, 0],
]


@pytest.fixture
def binary5():
    return SutConfig((2, 2, 2, 2, 2))


@pytest.fixture
def surveillance_suite():
    return [list(r) for r in SURVEILLANCE_SUITE]


class OnesRng:
    """Stands in for a Generator whose uniform draws are all 1.0."""

    def random(self, size=None):
        import numpy as np

        return np.ones(size)


@pytest.fixture
def ones_rng():
    return OnesRng()


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    """Collects one PASS/FAIL line per acceptance criterion for the summary."""
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
