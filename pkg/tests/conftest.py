import pytest

ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def record(request):
    """Record one acceptance line: ``record(criterion, label, ok, seconds, limit)``."""
    lines = request.config.stash.setdefault(ACCEPTANCE, [])

    def rec(criterion, label, ok, seconds=None, limit=None):
        timing = ""
        if seconds is not None:
            timing = f" ({seconds:.2f}s" + (f" / limit {limit}s)" if limit else ")")
        line = f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'}  {label}{timing}"
        lines.append(line)
        print(line)
        return ok

    return rec


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
