"""Collects acceptance verdict lines and prints them after the test summary.

pytest captures stdout at the file-descriptor level, so the per-criterion
lines printed inside tests are only visible under -s. The terminal-summary
hook below repeats them where every run can see them, including piped ones.
"""

ACCEPTANCE_VERDICTS: list = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_VERDICTS:
            terminalreporter.write_line(line)
