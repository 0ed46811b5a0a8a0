import pytest

from stieltjes_cf.numkernel import PrecisionContext

# acceptance lines collected by test_acceptance.py, echoed in the summary
ACCEPTANCE_LINES: dict = {}


@pytest.fixture(scope="session")
def ctx32():
    return PrecisionContext(32)


@pytest.fixture(scope="session")
def ctx64():
    return PrecisionContext(64)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
