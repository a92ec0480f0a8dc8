import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gridcode.grid import build_grid  # noqa: E402
from gridcode.params import derive_params  # noqa: E402

# The finished 8x8 grid for d=2, b=1, t=1; rows top to bottom.
GRID8 = (
    (2, 2, 2, 2, 2, 1, 2, 1),
    (2, 2, 2, 2, 1, 2, 1, 2),
    (2, 2, 2, 2, 2, 1, 2, 2),
    (2, 2, 2, 2, 1, 2, 1, 2),
    (0, 2, 0, 2, 0, 1, 0, 1),
    (2, 0, 2, 0, 1, 0, 1, 0),
    (0, 2, 0, 2, 0, 1, 0, 2),
    (2, 0, 2, 2, 1, 0, 1, 2),
)


@pytest.fixture(scope="session")
def params8():
    return derive_params(2, 1, 1)


@pytest.fixture(scope="session")
def example_grid(params8):
    return build_grid(params8)


@pytest.fixture(scope="session")
def grid256():
    return build_grid(derive_params(2, 2, 1))


_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        detail = dict(report.user_properties).get("criterion", report.nodeid.split("::")[-1])
        extra = dict(report.user_properties).get("detail", "")
        _ACCEPTANCE.append((report.outcome, detail, extra))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for outcome, name, extra in _ACCEPTANCE:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
        for line in str(extra).splitlines():
            if line:
                terminalreporter.write_line(f"      {line}")
