import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record_criterion():
    """Record one pass/fail line per acceptance criterion for the summary."""

    def record(number, title, ok, elapsed, limit, detail=""):
        status = "PASS" if ok else "FAIL"
        line = f"criterion {number}: {status}  {title}  ({elapsed:.2f}s, limit {limit})"
        if detail:
            line += f"  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
