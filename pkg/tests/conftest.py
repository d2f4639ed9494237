import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from signet.fixtures import load_fixture  # noqa: E402


@pytest.fixture(scope="session")
def cyl2conn():
    return load_fixture("cyl2conn")


@pytest.fixture(scope="session")
def t6():
    return load_fixture("t6")


@pytest.fixture(scope="session")
def cylint4():
    return load_fixture("cylint4")


# criterion number -> (passed, one-line detail); filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
