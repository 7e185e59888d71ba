import functools

import pytest

from lagasym.oracle import build_table
from lagasym.weight import WeightSpec

ACCEPTANCE_LINES = []


@functools.lru_cache(maxsize=None)
def cached_table(alpha, q, nmax=80):
    return build_table(WeightSpec(alpha, q), nmax)


@pytest.fixture(scope="session")
def table():
    return cached_table


def report(criterion, ok, detail):
    line = f"ACCEPTANCE {criterion:>2}: {'PASS' if ok else 'FAIL'} | {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
