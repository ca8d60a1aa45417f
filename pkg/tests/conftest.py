import time
from contextlib import contextmanager

# criterion number -> (passed, seconds, description)
ACCEPTANCE: dict[int, tuple[bool, float, str]] = {}


@contextmanager
def criterion(number: int, description: str, limit: float):
    """Record a pass/fail line for an acceptance criterion, including its time limit."""
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        if ok and elapsed > limit:
            ok = False
            description += f" (over the {limit:.0f} s limit)"
        ACCEPTANCE[number] = (ok, elapsed, description)
    assert elapsed <= limit, f"criterion {number} took {elapsed:.1f} s, limit {limit:.0f} s"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, secs, desc = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {secs:7.2f} s  {desc}")
