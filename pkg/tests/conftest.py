from __future__ import annotations

import pytest

from homforge.gadget_search import search_gadgets

# one "criterion: PASS/FAIL" line per acceptance test, echoed at the end
# of the run by pytest_terminal_summary
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def certified_triple():
    """One deterministic certified block triple, shared across the suite."""
    return search_gadgets(8, "triple", seed=0)


@pytest.fixture(scope="session")
def certified_pair(certified_triple):
    return certified_triple.pair()


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
