import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for the oracles module

from causetlab import Causet, HistorySpace, MeasureTable, validate_causet

DATA = Path(__file__).parent / "data"

# one line per acceptance criterion, echoed after the test summary so they
# survive pytest's output capture
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.write_line("")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture
def anti2() -> Causet:
    return validate_causet(["x", "y"], [])


@pytest.fixture
def chain2() -> Causet:
    return validate_causet(["u", "v"], [("u", "v")])


@pytest.fixture
def chain3() -> Causet:
    return validate_causet(["c1", "c2", "c3"], [("c1", "c2"), ("c2", "c3")])


@pytest.fixture
def diamond() -> Causet:
    return validate_causet(
        ["p", "a", "b", "t"], [("p", "a"), ("p", "b"), ("a", "t"), ("b", "t")]
    )


@pytest.fixture
def w_causet() -> Causet:
    # q below a; b unrelated to both
    return validate_causet(["q", "a", "b"], [("q", "a")])


@pytest.fixture
def anti2_space(anti2) -> HistorySpace:
    return HistorySpace(anti2, 2)


@pytest.fixture
def perf(anti2_space) -> MeasureTable:
    return MeasureTable.perfectly_correlated(anti2_space)
