import pytest

from acceptance_log import summary_lines
from rightangled import pipeline
from rightangled.realization import realize

IDEAL_MAX_V = 15
COMPACT_MAX_V = 32


@pytest.fixture(scope="session")
def ideal_census():
    """(rows, measurements) for ideal polyhedra up to the stretch range."""
    return pipeline.census("ideal", IDEAL_MAX_V)


@pytest.fixture(scope="session")
def compact_census():
    return pipeline.census("compact", COMPACT_MAX_V)


@pytest.fixture(scope="session")
def ideal_realized():
    from rightangled.enumeration import enumerate_ideal_candidates
    return [realize(P) for P in enumerate_ideal_candidates(12)]


@pytest.fixture(scope="session")
def compact_realized():
    from rightangled.enumeration import enumerate_compact_candidates
    return [realize(P) for P in enumerate_compact_candidates(28)]


def pytest_terminal_summary(terminalreporter):
    lines = summary_lines()
    if not lines:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
