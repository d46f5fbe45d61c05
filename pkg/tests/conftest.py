import pytest

from klsf import LabeledGraph

A, B, C = 1, 2, 3

_acceptance_lines: list[str] = []


def report(name: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {name}" + (f" :: {detail}" if detail else "")
    _acceptance_lines.append(line)
    print(line)


@pytest.fixture
def square():
    """n=4 with a on (1,2),(3,4), b on (2,3), c on (1,3)."""
    return LabeledGraph(4, ((1, 2, A), (3, 4, A), (2, 3, B), (1, 3, C)), 3)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
