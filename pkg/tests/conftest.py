import sys

import pytest

from hecke0.affine import affine_group
from hecke0.rootdatum import load_datum

FINITE_OMEGA = ("A1-sc", "A1-ad", "A1xA1", "A2-sc", "A2-ad", "C2", "G2")


def group(name):
    return affine_group(load_datum(name))


@pytest.fixture(params=FINITE_OMEGA)
def W(request):
    return group(request.param)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
