"""Shared pytest hooks: print one PASS/FAIL line per acceptance criterion."""

_ACCEPTANCE_RESULTS: dict[str, tuple[str, str]] = {}


def record_acceptance(criterion: str, detail: str = "") -> None:
    """Called by acceptance tests after their asserts succeed."""
    _ACCEPTANCE_RESULTS[criterion] = ("PASS", detail)


def expect_acceptance(criterion: str) -> None:
    """Pre-register a criterion so a crash still produces a FAIL line."""
    _ACCEPTANCE_RESULTS.setdefault(criterion, ("FAIL", ""))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for criterion, (status, detail) in _ACCEPTANCE_RESULTS.items():
        suffix = f" ({detail})" if detail else ""
        terminalreporter.write_line(f"{status}: {criterion}{suffix}")
