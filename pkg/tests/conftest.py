import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion, then assert."""
    def record(label: str, ok: bool, detail: str, known_failure: bool = False):
        tag = "PASS" if ok else "FAIL"
        line = f"[{tag}] {label}: {detail}"
        if known_failure and not ok:
            line += " (known, see decisions ledger)"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
