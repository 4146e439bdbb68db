import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from hardylab.grid import make_grid  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: takes more than a few seconds")


@pytest.fixture
def grid1():
    return make_grid(1, 4.0, 64)


@pytest.fixture
def grid2():
    return make_grid(2, 4.0, 32)


# -- acceptance summary --------------------------------------------------------
# tests named test_criterion_<k>_... are aggregated into one line per criterion

_criteria = {}
_notes = {}


def note(criterion: int, text: str) -> None:
    """Attach a measured value to the acceptance line of ``criterion``."""
    _notes.setdefault(criterion, []).append(text)


def _criterion_of(report):
    name = report.nodeid.split("::")[-1]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return None
    return int(name.split("_")[2])


def pytest_runtest_logreport(report):
    k = _criterion_of(report)
    if k is None:
        return
    if report.when == "call" or report.outcome != "passed":
        ok = report.outcome == "passed"
        _criteria[k] = _criteria.get(k, True) and ok


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_criteria):
        status = "PASS" if _criteria[k] else "FAIL"
        detail = "; ".join(_notes.get(k, []))
        terminalreporter.write_line(f"criterion {k:2d}: {status}" + (f"  ({detail})" if detail else ""))
