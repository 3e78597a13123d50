from __future__ import annotations

import pytest

from stranded.catalog import catalog_graph


@pytest.fixture
def planar_tadpole():
    return catalog_graph("planar_tadpole")


@pytest.fixture
def nonplanar_tadpole():
    return catalog_graph("nonplanar_tadpole")


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    lines = test_acceptance.RESULTS
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(lines):
        terminalreporter.write_line(lines[key])
