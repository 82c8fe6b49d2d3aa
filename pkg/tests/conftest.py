"""Shared test plumbing: the acceptance-criteria summary block."""

from __future__ import annotations

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}
ACCEPTANCE_TOTAL = 14


def record_criterion(num: int, ok: bool, detail: str = "") -> None:
    """Stash a criterion verdict for the end-of-run summary, then assert."""
    ACCEPTANCE_RESULTS[num] = (ok, detail)
    assert ok, f"acceptance criterion {num} failed: {detail}"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in range(1, ACCEPTANCE_TOTAL + 1):
        if num in ACCEPTANCE_RESULTS:
            ok, detail = ACCEPTANCE_RESULTS[num]
            verdict = "PASS" if ok else "FAIL"
        else:
            verdict, detail = "NOT RUN", ""
        suffix = f"  ({detail})" if detail else ""
        terminalreporter.write_line(f"criterion {num:2d}: {verdict}{suffix}")
