import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one acceptance verdict line; the assertion is left to the test."""

    def record(number: int, title: str, ok: bool, detail: str = "") -> bool:
        verdict = "PASS" if ok else "FAIL"
        ACCEPTANCE_LINES.append(f"[{verdict}] criterion {number}: {title}" + (f" ({detail})" if detail else ""))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
