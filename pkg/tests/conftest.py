import sys
from importlib import resources
from pathlib import Path

import pytest

FIXTURES = Path(str(resources.files("carsim.fixtures")))
REPORTS = sorted((FIXTURES / "reports").glob("*.txt"))


@pytest.fixture(scope="session")
def a4_fd_text() -> str:
    return (FIXTURES / "a4.fd").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def a4_en() -> str:
    return (FIXTURES / "a4_en.txt").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def a4_fr() -> str:
    return (FIXTURES / "a4_fr.txt").read_text(encoding="utf-8")


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
