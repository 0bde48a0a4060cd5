import numpy as np
import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def report():
    """Collects one PASS/FAIL line per acceptance criterion."""

    def add(tag: str, ok: bool, detail: str):
        ACCEPTANCE_LINES.append(f"{tag} {'PASS' if ok else 'FAIL'}: {detail}")
        print(ACCEPTANCE_LINES[-1])
        return ok

    return add


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[0][1:])):
            terminalreporter.write_line(line)
