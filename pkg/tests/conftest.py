import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from ellfusion.elliptic import EllipticContext  # noqa: E402


@pytest.fixture(scope="session")
def ctx():
    return EllipticContext()


# generic off-lattice points used by several modules
POINTS = [0.37 + 0.013j, 0.11 - 0.021j, 0.62 + 0.07j, 0.83 - 0.05j, 0.25]
PAIRS = [(0.37 + 0.013j, 0.11 - 0.021j), (0.62 + 0.07j, 0.29 + 0.03j), (0.83 - 0.05j, 0.46 + 0.02j)]


# criterion number -> one-line verdict, filled in by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[number])
