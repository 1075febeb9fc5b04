from __future__ import annotations

# Criterion results recorded by test_acceptance.py; echoed after the run so
# the pass/fail line for every acceptance criterion is visible in one place.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
