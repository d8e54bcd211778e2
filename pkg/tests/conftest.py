"""Shared test hooks: surface the acceptance-gate lines after the run."""

_gate_lines = []


def record_gate_line(line: str):
    _gate_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _gate_lines:
        terminalreporter.section("acceptance criteria")
        for line in _gate_lines:
            terminalreporter.write_line(line)
