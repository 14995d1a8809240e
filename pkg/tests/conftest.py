import pytest

from smoothsum import make_prime_set

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def P23():
    return make_prime_set([2, 3])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
