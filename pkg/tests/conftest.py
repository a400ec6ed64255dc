import pytest

_LINES = []


@pytest.fixture
def criterion():
    """Record one pass/fail line for an acceptance criterion."""

    def record(num, title, ok, elapsed, limit=None, detail=""):
        budget = f"{elapsed:.2f}s" + (f" (limit {limit}s)" if limit is not None else "")
        line = f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {title}  [{budget}]"
        if detail:
            line += f"  {detail}"
        print(line)
        _LINES.append((num, line))

    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for _, line in sorted(_LINES):
            terminalreporter.write_line(line)
