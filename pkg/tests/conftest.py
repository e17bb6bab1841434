import pytest

# criterion number -> (title, passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict = {}


@pytest.fixture
def acceptance():
    def record(num: int, title: str, passed: bool, detail: str = "") -> None:
        ACCEPTANCE[num] = (title, bool(passed), detail)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[num]
        tr.write_line(f"[{'PASS' if passed else 'FAIL'}] {num}. {title}" + (f": {detail}" if detail else ""))
    npass = sum(1 for _, ok, _ in ACCEPTANCE.values() if ok)
    tr.write_line(f"{npass}/{len(ACCEPTANCE)} criteria met")
