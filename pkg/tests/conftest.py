import pytest

from sinkrand.rng import RandomSource

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return RandomSource(12345)


@pytest.fixture
def report():
    """Record one pass/fail line for the acceptance summary."""

    def _record(criterion: str, ok: bool, detail: str) -> None:
        _ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {criterion}: {detail}")

    return _record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
