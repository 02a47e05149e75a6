import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from k3mirror.pipeline import load_golden  # noqa: E402

CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def golden():
    return load_golden()


@pytest.fixture
def record_criterion():
    def record(number: int, ok: bool, detail: str = ""):
        CRITERIA[number] = (ok, detail)
    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        ok, detail = CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
