# Acceptance tests append (label, passed, detail) here; printed at the end.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in sorted(ACCEPTANCE_LINES, key=lambda x: int(x[0].split()[1])):
        terminalreporter.write_line(f"{label}: {'PASS' if passed else 'FAIL'}  {detail}")
