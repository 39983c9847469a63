from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from msdigraph.digraph6 import decode  # noqa: E402
from msdigraph.gen import enumerate_to  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def catalogs():
    """Catalogs of orders 1..7, indexed by order."""
    return {c.order: c for c in enumerate_to(7)}


@pytest.fixture(scope="session")
def msc_by_order(catalogs):
    return {n: [decode(e) for e in c.entries] for n, c in catalogs.items()}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
