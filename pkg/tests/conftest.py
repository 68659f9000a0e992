from pathlib import Path

import pytest

DATA = Path(__file__).resolve().parents[1] / "data"

_acceptance_lines = []


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def report():
    """Record a one-line acceptance verdict, echoed in the terminal summary."""

    def record(criterion, ok, detail):
        verdict = "N/A " if ok is None else ("PASS" if ok else "FAIL")
        _acceptance_lines.append(f"[{verdict}] criterion {criterion}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
