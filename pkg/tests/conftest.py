import sys
from pathlib import Path

import pytest

TESTS = Path(__file__).resolve().parent
sys.path.insert(0, str(TESTS))

from hopfcyclic.cli.commands import DEFAULT_CORPUS  # noqa: E402


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return DEFAULT_CORPUS


ACCEPTANCE: list = []   # (number, title, ok, seconds, bound)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, seconds, bound in sorted(ACCEPTANCE):
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(
            f"criterion {number}: {verdict}  {title}  ({seconds:.2f} s, bound {bound:g} s)")
