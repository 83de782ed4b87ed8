import pytest

from helpers import cov


@pytest.fixture
def p3_cover():
    return cov("abc", "ab", "ac")


@pytest.fixture
def dowling_cover():
    return cov("abcd", "abd", "acd")


@pytest.fixture
def singletons4():
    return cov("abcd", "a", "b", "c", "d")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
