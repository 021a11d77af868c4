import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from planarpd.jacobi import EXAMPLE_MATRIX  # noqa: E402


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def example_matrix():
    return EXAMPLE_MATRIX


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py" in rep.nodeid and rep.when == "call":
                rows.append((rep.nodeid, outcome))
            elif "test_acceptance.py" in rep.nodeid and outcome == "error":
                rows.append((rep.nodeid, outcome))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in sorted(rows, key=lambda r: r[0]):
        name = nodeid.split("::")[-1]
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
