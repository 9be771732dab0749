import re

ACCEPTANCE_FILE = "test_acceptance.py"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    lines = {}
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            if ACCEPTANCE_FILE not in str(getattr(report, "nodeid", "")):
                continue
            match = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
            if not match:
                continue
            number = int(match.group(1))
            label = match.group(2).replace("_", " ")
            verdict = "PASS" if status == "passed" else "FAIL"
            lines[number] = f"criterion {number:2d} ({label}): {verdict}"
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for number in sorted(lines):
            terminalreporter.write_line(lines[number])
