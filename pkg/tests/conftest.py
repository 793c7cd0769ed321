import sys

import pytest

from monocover.monolith import Case, GroupSpec, enumerate_group
from monocover.subgroups import enumerate_maximals_G

ODD52 = GroupSpec(5, 2, Case.ODD)
EVEN52 = GroupSpec(5, 2, Case.EVEN)


@pytest.fixture(scope="session")
def odd52():
    return enumerate_group(ODD52)


@pytest.fixture(scope="session")
def even52():
    return enumerate_group(EVEN52)


@pytest.fixture(scope="session")
def odd52_max():
    return enumerate_maximals_G(ODD52)


@pytest.fixture(scope="session")
def even52_max():
    return enumerate_maximals_G(EVEN52)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if not lines:
        return
    terminalreporter.section("acceptance")
    for k in sorted(lines):
        terminalreporter.write_line(lines[k])
