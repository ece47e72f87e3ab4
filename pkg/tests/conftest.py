import time

import pytest

ACCEPTANCE = {}


class Criterion:
    """Times one acceptance criterion and records a one-line verdict."""

    def __init__(self, number, title, budget):
        self.number, self.title, self.budget = number, title, budget
        self.detail = ""

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None and elapsed < self.budget
        why = "" if exc_type is None else f" ({exc_type.__name__})"
        line = (
            f"criterion {self.number:>2} {'PASS' if ok else 'FAIL'}  {self.title}"
            f"  [{elapsed:.2f}s / {self.budget:g}s]{why}{self.detail}"
        )
        ACCEPTANCE[self.number] = line
        print(line)
        if exc_type is None:
            assert elapsed < self.budget, f"criterion {self.number} took {elapsed:.2f}s, budget {self.budget}s"
        return False


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
