import pytest

# one line per acceptance check, filled by test_acceptance.py
VERDICTS: list[str] = []


@pytest.fixture
def verdict():
    def record(label: str, ok: bool, elapsed: float, detail: str = "") -> None:
        line = f"{'PASS' if ok else 'FAIL'}  {label}  ({elapsed:.1f} s){'  ' + detail if detail else ''}"
        VERDICTS.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance")
        for line in VERDICTS:
            terminalreporter.write_line(line)
