"""Pytest hooks: echo acceptance criterion verdicts after the run."""

import helpers


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not helpers.ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(helpers.ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
