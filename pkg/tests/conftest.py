import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from acceptance_log import RESULTS  # noqa: E402


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, status, detail in sorted(RESULTS):
        terminalreporter.write_line(f"criterion {num}: {status:<4} {title}" + (f" -- {detail}" if detail else ""))
