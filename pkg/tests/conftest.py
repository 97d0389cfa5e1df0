import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bctforge.field_core import build_field  # noqa: E402


@lru_cache(maxsize=None)
def gf(p, m):
    return build_field(p, m)


def gf_q2(q):
    """GF(q^2) for the odd prime powers used in the tests."""
    p = next(f for f in range(3, q + 1, 2) if q % f == 0)
    k = 0
    while p ** k < q:
        k += 1
    assert p ** k == q
    return gf(p, 2 * k)


@pytest.fixture
def gf7():
    return gf(7, 1)


@pytest.fixture
def gf49():
    return gf(7, 2)


# -- acceptance summary -----------------------------------------------------

ACCEPTANCE_LINES = []


def record(criterion, passed, detail=""):
    ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
