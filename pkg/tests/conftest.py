import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tubular import fixtures as fx  # noqa: E402

ACCEPTANCE_LINES: dict = {}


@pytest.fixture(scope="session")
def kron():
    return fx.kronecker()


@pytest.fixture(scope="session")
def canonical():
    return fx.canonical_333()


@pytest.fixture(scope="session")
def e6():
    return fx.e6_hereditary()


@pytest.fixture(scope="session")
def s22():
    return fx.kronecker_S22()


@pytest.fixture(scope="session")
def e6_ext():
    return fx.e6_extension()


@pytest.fixture(scope="session")
def trivext():
    return fx.trivext_333()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
